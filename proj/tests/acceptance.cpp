// Acceptance suite: each criterion below encodes one pinned identity or
// trend check with its tolerance and runtime budget fixed in code.  Run all
// criteria (default) or a single one with --criterion N.  One PASS/FAIL line
// is printed per criterion; failures carry detail lines.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "platgenus/cobordism.hpp"
#include "platgenus/montecarlo.hpp"
#include "platgenus/numbers.hpp"
#include "platgenus/partition_stats.hpp"
#include "platgenus/rng.hpp"
#include "platgenus/twist_word.hpp"

using namespace platgenus;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string title;
    std::vector<std::string> details;
    double elapsed_seconds = 0.0;
    double budget_seconds = 0.0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string rat_str(const BigRat& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

// 1. Exact unsigned average equals (n+1)/4 for every n in [2, 64].
CriterionResult criterion1() {
    CriterionResult r;
    r.title = "exact unsigned average equals (n+1)/4 for every n in [2,64]";
    r.budget_seconds = 1.0;
    const auto start = Clock::now();
    bool ok = true;
    for (std::int64_t n = 2; n <= 64; ++n) {
        const BigRat avg = avg_genus_exact(n, false, AverageMode::words).value;
        const BigRat formula(n + 1, 4);
        if (avg != formula) {
            ok = false;
            r.details.push_back("mismatch at n=" + std::to_string(n) + ": computed " +
                                rat_str(avg) + ", formula gives " + rat_str(formula));
        }
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

// 2. Signed words-mode <g>_n / n >= 1/4 for every n in [2, 64], exactly.
CriterionResult criterion2() {
    CriterionResult r;
    r.title = "signed average genus ratio >= 1/4 for every n in [2,64]";
    r.budget_seconds = 1.0;
    const auto start = Clock::now();
    bool ok = true;
    const BigRat quarter(1, 4);
    for (std::int64_t n = 2; n <= 64; ++n) {
        const BigRat ratio = avg_genus_exact(n, true, AverageMode::words).value / n;
        if (ratio < quarter) {
            ok = false;
            r.details.push_back("ratio below 1/4 at n=" + std::to_string(n) + ": " +
                                rat_str(ratio));
        }
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

// 3. Enumeration count and per-m histogram match the census for n in [2, 14].
CriterionResult criterion3() {
    CriterionResult r;
    r.title = "full enumeration matches the binomial census for every n in [2,14]";
    r.budget_seconds = 60.0;
    const auto start = Clock::now();
    bool ok = true;
    for (std::int64_t n = 2; n <= 14; ++n) {
        const CompositionCensus census = CompositionCensus::build(n, true);
        std::map<std::int64_t, std::int64_t> histogram;
        std::int64_t count = 0;
        enumerate_words(n, [&](const TwistWord& w) {
            ++count;
            histogram[w.pair_count()] += 1;
        });
        if (BigInt(count) != census.total()) {
            ok = false;
            r.details.push_back("count mismatch at n=" + std::to_string(n) + ": enumerated " +
                                std::to_string(count) + ", census " + census.total().str());
        }
        for (std::int64_t m = 1; m <= census.max_m(); ++m) {
            if (census.count_for(m) != BigInt(histogram[m])) {
                ok = false;
                r.details.push_back("histogram mismatch at n=" + std::to_string(n) +
                                    ", m=" + std::to_string(m));
            }
        }
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

// 4. Exact tail fractions strictly decrease over n = 8, 16, 32, 64 and drop
//    by more than a factor 100 between the endpoints.
CriterionResult criterion4() {
    CriterionResult r;
    r.title = "tail fraction decays strictly along n = 8, 16, 32, 64";
    r.budget_seconds = 1.0;
    const auto start = Clock::now();
    bool ok = true;
    std::vector<BigRat> tails;
    for (std::int64_t n : {8, 16, 32, 64}) {
        tails.push_back(tail_fraction(n, true).value);
    }
    for (std::size_t i = 1; i < tails.size(); ++i) {
        if (!(tails[i] < tails[i - 1])) {
            ok = false;
            r.details.push_back("tail not strictly decreasing at step " + std::to_string(i));
        }
    }
    if (!(tails.back() < tails.front() / 100)) {
        ok = false;
        r.details.push_back("tail(64) >= tail(8)/100");
    }
    if (!ok) {
        for (std::size_t i = 0; i < tails.size(); ++i) {
            r.details.push_back("tail[" + std::to_string(i) + "] = " + rat_str(tails[i]));
        }
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

// 5. Random-walk law: k=1, s=1, t=1e5, 100 trials; the mean mirror-class
//    discrepancy normalized by sqrt(t/4) lands in [0.9, 1.35].
CriterionResult criterion5() {
    CriterionResult r;
    r.title = "random-walk discrepancy normalized ratio in [0.9, 1.35]";
    r.budget_seconds = 30.0;
    const auto start = Clock::now();
    WalkConfig cfg;
    cfg.k = 1;
    cfg.s = 1;
    cfg.t = 100000;
    cfg.trials = 100;
    cfg.seed = 90210;
    const WalkReport report = walk_experiment(cfg);
    const bool ok = report.normalized_ratio >= 0.9 && report.normalized_ratio <= 1.35;
    {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "normalized ratio %.6f (CLT target 2/sqrt(pi) = 1.128379), se %.6f",
                      report.normalized_ratio, report.se_normalized);
        r.details.push_back(buf);
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

// 6. Pipeline soundness: 1e4 random words with n <= 1e3 and random
//    (k,s) in [1,8]x[1,3]; bound <= m, replay matches, pair-count bound.
CriterionResult criterion6() {
    CriterionResult r;
    r.title = "pipeline soundness on 10^4 random words (n <= 10^3)";
    r.budget_seconds = 120.0;
    const auto start = Clock::now();
    bool ok = true;
    std::map<std::int64_t, WordSampler> samplers;
    Rng rng = make_engine(20121221, 0, 6);
    std::int64_t violations = 0;
    for (int i = 0; i < 10000 && violations < 10; ++i) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(uniform_below(rng, 999));
        auto it = samplers.find(n);
        if (it == samplers.end()) {
            it = samplers.emplace(n, WordSampler(n)).first;
        }
        const TwistWord w = it->second.sample(rng);
        const BoundParams p{1 + static_cast<std::int64_t>(uniform_below(rng, 8)),
                            1 + static_cast<std::int64_t>(uniform_below(rng, 3))};
        const BoundResult result = g4_upper_bound(w, p);
        if (result.bound > w.seifert_genus()) {
            ok = false;
            ++violations;
            r.details.push_back("bound exceeds genus at sample " + std::to_string(i));
        }
        const ReplayReport check = replay(result.trace);
        if (!check.ok || check.total_cost != result.trace.total_cost) {
            ok = false;
            ++violations;
            r.details.push_back("replay failed at sample " + std::to_string(i) + ": " +
                                check.message);
        }
        std::int64_t removed = 0;
        for (const TraceStep& step : result.trace.steps) {
            if (step.kind == StepKind::RemoveLargePair) {
                ++removed;
            }
        }
        if (removed * p.k > w.complexity()) {
            ok = false;
            ++violations;
            r.details.push_back("pair-count bound violated at sample " + std::to_string(i));
        }
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

constexpr std::uint64_t kSweepSeed = 424243;

TrendReport run_reference_sweep(int workers) {
    const std::vector<std::int64_t> n_grid{100, 1000, 10000, 100000};
    std::vector<BoundParams> grid;
    for (std::int64_t k : {2, 3, 4}) {
        for (std::int64_t s : {1, 2, 3}) {
            grid.push_back({k, s});
        }
    }
    SamplerConfig base;
    base.sample_count = 1000;
    base.master_seed = kSweepSeed;
    base.worker_count = workers;
    return ratio_trend_report(n_grid, base, grid);
}

// 7. Monte-Carlo ratio trend: weakly decreasing over n = 1e2..1e5 and the
//    endpoint drops to at most 0.9x the start.
CriterionResult criterion7() {
    CriterionResult r;
    r.title = "certified-bound ratio trend decreases along n = 10^2..10^5";
    r.budget_seconds = 300.0;
    const auto start = Clock::now();
    const TrendReport report = run_reference_sweep(0);
    bool ok = true;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        char buf[120];
        std::snprintf(buf, sizeof(buf), "n=%-7lld avg_ratio=%.6f se=%.6f",
                      static_cast<long long>(report.rows[i].stats.n),
                      report.rows[i].stats.avg_ratio.mean, report.rows[i].stats.avg_ratio.se);
        r.details.push_back(buf);
        if (i > 0 &&
            report.rows[i].stats.avg_ratio.mean > report.rows[i - 1].stats.avg_ratio.mean) {
            ok = false;
            r.details.push_back("ratio increased from row " + std::to_string(i - 1) + " to " +
                                std::to_string(i));
        }
    }
    const double first = report.rows.front().stats.avg_ratio.mean;
    const double last = report.rows.back().stats.avg_ratio.mean;
    if (!(last <= 0.9 * first)) {
        ok = false;
        r.details.push_back("endpoint ratio not below 0.9x the start");
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

// 8. Worst-case formula: bound(n,k,s)/n at n = 10^12 within 1% of
//    2/k + 1/(2(s+1)) for (k,s) in {(32,2), (100,5), (1000,10)}.
CriterionResult criterion8() {
    CriterionResult r;
    r.title = "worst-case formula ratio at n=10^12 within 1% of its limit";
    r.budget_seconds = 1.0;
    const auto start = Clock::now();
    bool ok = true;
    const std::int64_t n = 1000000000000LL;
    for (const BoundParams p : {BoundParams{32, 2}, BoundParams{100, 5}, BoundParams{1000, 10}}) {
        const BigFloat ratio = worst_case_bound(n, p).total / BigFloat(n);
        const BigFloat limit = worst_case_limit_ratio(p);
        const BigFloat deviation = boost::multiprecision::abs(ratio - limit) / limit;
        char buf[200];
        std::snprintf(buf, sizeof(buf), "(k=%lld, s=%lld): ratio %.6g, limit %.6g, deviation %.3g",
                      static_cast<long long>(p.k), static_cast<long long>(p.s),
                      static_cast<double>(ratio), static_cast<double>(limit),
                      static_cast<double>(deviation));
        r.details.push_back(buf);
        if (!(deviation <= BigFloat("0.01"))) {
            ok = false;
        }
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

// 9. Determinism: the criterion-7 sweep, run twice with the same seed but
//    different worker counts, emits byte-identical CSV.
CriterionResult criterion9() {
    CriterionResult r;
    r.title = "sweep CSV is byte-identical across worker counts";
    r.budget_seconds = 600.0;
    const auto start = Clock::now();
    const std::string csv1 = trend_report_csv(run_reference_sweep(1));
    const std::string csv4 = trend_report_csv(run_reference_sweep(4));
    const bool ok = csv1 == csv4;
    if (!ok) {
        r.details.push_back("worker counts 1 and 4 produced different CSV bytes");
    }
    r.elapsed_seconds = seconds_since(start);
    r.pass = ok && r.elapsed_seconds <= r.budget_seconds;
    return r;
}

using CriterionFn = CriterionResult (*)();

constexpr CriterionFn kCriteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                     criterion6, criterion7, criterion8, criterion9};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > 9) {
        std::fprintf(stderr, "criterion number must be in 1..9\n");
        return 2;
    }

    int failures = 0;
    for (int idx = 1; idx <= 9; ++idx) {
        if (only != 0 && idx != only) {
            continue;
        }
        const CriterionResult result = kCriteria[idx - 1]();
        std::printf("criterion %d [%s] %s (%.2f s, budget %.0f s)\n", idx,
                    result.pass ? "PASS" : "FAIL", result.title.c_str(), result.elapsed_seconds,
                    result.budget_seconds);
        for (const std::string& line : result.details) {
            std::printf("    %s\n", line.c_str());
        }
        if (!result.pass) {
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
