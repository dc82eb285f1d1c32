#include "platgenus/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "platgenus/partition_stats.hpp"

namespace platgenus {

namespace {

constexpr std::uint64_t kWalkStream = 0x57414C4BULL; // disjoint from estimate streams

int hardware_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

WordSampler::WordSampler(std::int64_t n) : n_(n) {
    if (n < 2) {
        throw std::invalid_argument("sampler requires n >= 2");
    }
    // Signed census: C(n-1, 2m-1) * 4^m for m = 1..n/2.  Two passes keep the
    // BigInt memory footprint constant: totals first, then cumulative ratios.
    const std::int64_t big_n = n - 1;
    auto for_each_term = [big_n, n](auto&& f) {
        BigInt binom = big_n;
        BigInt weight = 4;
        for (std::int64_t m = 1; 2 * m <= n; ++m) {
            f(BigInt(binom * weight));
            const std::int64_t j = 2 * m - 1;
            if (j + 2 <= big_n) {
                binom *= (big_n - j) * (big_n - j - 1);
                binom /= (j + 1) * (j + 2);
                weight *= 4;
            } else {
                binom = 0;
            }
        }
    };
    BigInt total = 0;
    for_each_term([&](const BigInt& term) { total += term; });
    cumulative_.reserve(static_cast<std::size_t>(n / 2));
    BigInt cum = 0;
    for_each_term([&](const BigInt& term) {
        cum += term;
        cumulative_.push_back(ratio_as_long_double(cum, total));
    });
    cumulative_.back() = 1.0L;
}

std::int64_t WordSampler::sample_pair_count(Rng& rng) const {
    const long double u = uniform_unit(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx =
        (it == cumulative_.end()) ? cumulative_.size() - 1
                                  : static_cast<std::size_t>(it - cumulative_.begin());
    return static_cast<std::int64_t>(idx) + 1;
}

void WordSampler::sample_entries(Rng& rng, std::vector<int>& out) const {
    const std::int64_t m = sample_pair_count(rng);
    const std::int64_t parts = 2 * m;
    out.clear();
    out.reserve(static_cast<std::size_t>(parts));
    // Uniform composition of n into `parts` positive parts: select parts-1
    // cut positions among the n-1 gaps by selection sampling (exact, and the
    // cuts come out sorted).
    std::int64_t needed = parts - 1;
    std::int64_t prev = 0;
    for (std::int64_t v = 1; v <= n_ - 1 && needed > 0; ++v) {
        const std::uint64_t pool = static_cast<std::uint64_t>(n_ - v);
        if (uniform_below(rng, pool) < static_cast<std::uint64_t>(needed)) {
            out.push_back(static_cast<int>(v - prev));
            prev = v;
            --needed;
        }
    }
    out.push_back(static_cast<int>(n_ - prev));
    BitDrawer bits(rng);
    for (int& e : out) {
        if (bits.next()) {
            e = -e;
        }
    }
}

TwistWord WordSampler::sample(Rng& rng) const {
    std::vector<int> entries;
    sample_entries(rng, entries);
    return TwistWord(std::move(entries));
}

void SamplerConfig::validate() const {
    if (n < 2) {
        throw std::invalid_argument("sampler config requires n >= 2");
    }
    if (sample_count < 1) {
        throw std::invalid_argument("sampler config requires sample_count >= 1");
    }
    if (sample_cap < 1) {
        throw std::invalid_argument("sampler config requires a positive sample cap");
    }
}

namespace {

struct SampleRecord {
    std::int64_t m = 0;
    std::int64_t bound = 0;
    std::int32_t best_k = 0;
    std::int32_t best_s = 0;
};

Estimate make_estimate(long double sum, long double sum_sq, std::int64_t count) {
    Estimate e;
    e.count = count;
    if (count == 0) {
        return e;
    }
    const long double mean = sum / count;
    e.mean = static_cast<double>(mean);
    if (count >= 2) {
        long double var = (sum_sq - static_cast<long double>(count) * mean * mean) /
                          static_cast<long double>(count - 1);
        if (var < 0) {
            var = 0;
        }
        e.se = static_cast<double>(std::sqrt(static_cast<double>(var) / static_cast<double>(count)));
    }
    return e;
}

} // namespace

StatsReport estimate_stats(const SamplerConfig& cfg, std::span<const BoundParams> grid) {
    cfg.validate();
    if (grid.empty()) {
        throw std::invalid_argument("parameter grid must not be empty");
    }
    std::vector<BoundParams> params(grid.begin(), grid.end());
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    const std::int64_t effective = std::min(cfg.sample_count, cfg.sample_cap);
    const WordSampler sampler(cfg.n);
    std::vector<SampleRecord> records(static_cast<std::size_t>(effective));

    int workers = cfg.worker_count > 0 ? cfg.worker_count : hardware_workers();
    workers = static_cast<int>(std::min<std::int64_t>(workers, effective));

    std::atomic<std::int64_t> cursor{0};
    auto work = [&]() {
        std::vector<int> entries;
        for (;;) {
            const std::int64_t i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= effective) {
                break;
            }
            Rng rng = make_engine(cfg.master_seed, static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(cfg.n));
            sampler.sample_entries(rng, entries);
            const TwistWord word(entries);
            BoundParams chosen = params.front();
            const std::int64_t bound = g4_bound_value_best(word, params, &chosen);
            records[static_cast<std::size_t>(i)] =
                SampleRecord{word.pair_count(), bound, static_cast<std::int32_t>(chosen.k),
                             static_cast<std::int32_t>(chosen.s)};
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }

    // fixed-order reduction
    long double sum_g = 0, sq_g = 0, sum_b = 0, sq_b = 0, sum_r = 0, sq_r = 0, sum_t = 0,
                sq_t = 0;
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> modal;
    for (const SampleRecord& rec : records) {
        const long double g = static_cast<long double>(rec.m);
        const long double b = static_cast<long double>(rec.bound);
        const long double r = b / g;
        const long double tail = (8 * rec.m <= cfg.n) ? 1.0L : 0.0L;
        sum_g += g;
        sq_g += g * g;
        sum_b += b;
        sq_b += b * b;
        sum_r += r;
        sq_r += r * r;
        sum_t += tail;
        sq_t += tail * tail;
        modal[{rec.best_k, rec.best_s}] += 1;
    }

    StatsReport report;
    report.n = cfg.n;
    report.avg_genus = make_estimate(sum_g, sq_g, effective);
    report.avg_bound = make_estimate(sum_b, sq_b, effective);
    report.avg_ratio = make_estimate(sum_r, sq_r, effective);
    report.tail_fraction = make_estimate(sum_t, sq_t, effective);
    report.grid = params;
    report.seed = cfg.master_seed;
    report.samples_requested = cfg.sample_count;
    report.incomplete = effective < cfg.sample_count;
    std::pair<std::int32_t, std::int32_t> best_key{0, 0};
    std::int64_t best_count = -1;
    for (const auto& [key, count] : modal) {
        if (count > best_count) {
            best_key = key;
            best_count = count;
        }
    }
    report.modal_params = BoundParams{best_key.first, best_key.second};
    return report;
}

// ---------------------------------------------------------------------------
// Walk experiment

void WalkConfig::validate() const {
    if (k < 1 || s < 1) {
        throw std::invalid_argument("walk config requires k >= 1 and s >= 1");
    }
    if (t < 0) {
        throw std::invalid_argument("walk config requires t >= 0");
    }
    if (trials < 1) {
        throw std::invalid_argument("walk config requires trials >= 1");
    }
}

namespace {

struct TrialCensus {
    double pair_mean = 0.0;
    std::int64_t pair_count = 0;
    std::int64_t self_mirror_classes = 0;
    std::int64_t self_mirror_residual = 0;
};

// Entry value for alphabet index in [0, 2k): 1..k then -1..-k.
inline int alphabet_value(std::uint64_t idx, std::int64_t k) {
    const auto i = static_cast<std::int64_t>(idx);
    return i < k ? static_cast<int>(i + 1) : -static_cast<int>(i - k + 1);
}

TrialCensus census_from_sorted_codes(std::vector<std::uint64_t>& codes,
                                     const std::function<std::uint64_t(std::uint64_t)>& mirror_of) {
    std::sort(codes.begin(), codes.end());
    TrialCensus out;
    long double sum_d = 0;
    std::size_t i = 0;
    while (i < codes.size()) {
        std::size_t j = i;
        while (j < codes.size() && codes[j] == codes[i]) {
            ++j;
        }
        const std::uint64_t cls = codes[i];
        const std::int64_t count = static_cast<std::int64_t>(j - i);
        const std::uint64_t partner = mirror_of(cls);
        if (partner == cls) {
            out.self_mirror_classes += 1;
            out.self_mirror_residual += count % 2;
        } else if (partner > cls) {
            const auto range = std::equal_range(codes.begin(), codes.end(), partner);
            const std::int64_t other = range.second - range.first;
            sum_d += std::abs(count - other);
            out.pair_count += 1;
        } else if (!std::binary_search(codes.begin(), codes.end(), partner)) {
            sum_d += count;
            out.pair_count += 1;
        }
        i = j;
    }
    if (out.pair_count > 0) {
        out.pair_mean = static_cast<double>(sum_d / out.pair_count);
    }
    return out;
}

} // namespace

WalkReport walk_experiment(const WalkConfig& cfg) {
    cfg.validate();
    const bool fits_codes = cfg.k <= 15 && cfg.s <= 5;

    std::vector<double> trial_means(static_cast<std::size_t>(cfg.trials), 0.0);
    long double sum_pairs = 0, sum_self = 0, sum_self_residual = 0;

    const std::size_t word_len = static_cast<std::size_t>(2 * cfg.s);
    for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = make_engine(cfg.seed, static_cast<std::uint64_t>(trial), kWalkStream);
        TrialCensus census;
        if (fits_codes) {
            std::vector<std::uint64_t> codes;
            codes.reserve(static_cast<std::size_t>(cfg.t));
            std::vector<int> word(word_len);
            for (std::int64_t d = 0; d < cfg.t; ++d) {
                for (std::size_t e = 0; e < word_len; ++e) {
                    word[e] = alphabet_value(uniform_below(rng, 2 * cfg.k), cfg.k);
                }
                // class code: canonical under the packed-code order
                const std::uint64_t a = [&] {
                    std::uint64_t code = static_cast<std::uint64_t>(word_len) << 60;
                    int shift = 55;
                    for (std::size_t e = 0; e < word_len; ++e, shift -= 5) {
                        const int v = word[e];
                        code |= (v < 0 ? (0x10ULL | static_cast<unsigned>(-v))
                                       : static_cast<std::uint64_t>(v))
                                << shift;
                    }
                    return code;
                }();
                const std::uint64_t b = [&] {
                    std::uint64_t code = static_cast<std::uint64_t>(word_len) << 60;
                    int shift = 55;
                    for (std::size_t e = word_len; e-- > 0; shift -= 5) {
                        const int v = -word[e];
                        code |= (v < 0 ? (0x10ULL | static_cast<unsigned>(-v))
                                       : static_cast<std::uint64_t>(v))
                                << shift;
                    }
                    return code;
                }();
                codes.push_back(std::min(a, b));
            }
            std::uint64_t mask = 0;
            for (std::size_t e = 0; e < word_len; ++e) {
                mask |= 0x10ULL << (55 - 5 * static_cast<int>(e));
            }
            census = census_from_sorted_codes(codes, [mask, word_len](std::uint64_t cls) {
                std::uint64_t rev = static_cast<std::uint64_t>(word_len) << 60;
                int out_shift = 55;
                int in_shift = 60 - 5 * static_cast<int>(word_len);
                for (std::size_t e = 0; e < word_len; ++e, out_shift -= 5, in_shift += 5) {
                    rev |= ((cls >> in_shift) & 0x1F) << out_shift;
                }
                return std::min(cls ^ mask, rev);
            });
        } else {
            std::map<KnotClass, std::int64_t> counts;
            std::vector<int> word(word_len);
            for (std::int64_t d = 0; d < cfg.t; ++d) {
                for (std::size_t e = 0; e < word_len; ++e) {
                    word[e] = alphabet_value(uniform_below(rng, 2 * static_cast<std::uint64_t>(cfg.k)),
                                             cfg.k);
                }
                counts[KnotClass(TwistWord(word))] += 1;
            }
            long double sum_d = 0;
            for (const auto& [cls, count] : counts) {
                const KnotClass partner = cls.mirror_class();
                if (partner == cls) {
                    census.self_mirror_classes += 1;
                    census.self_mirror_residual += count % 2;
                } else if (cls < partner) {
                    const auto it = counts.find(partner);
                    const std::int64_t other = it == counts.end() ? 0 : it->second;
                    sum_d += std::abs(count - other);
                    census.pair_count += 1;
                } else if (counts.find(partner) == counts.end()) {
                    sum_d += count;
                    census.pair_count += 1;
                }
            }
            if (census.pair_count > 0) {
                census.pair_mean = static_cast<double>(sum_d / census.pair_count);
            }
        }
        trial_means[static_cast<std::size_t>(trial)] = census.pair_mean;
        sum_pairs += static_cast<long double>(census.pair_count);
        sum_self += static_cast<long double>(census.self_mirror_classes);
        sum_self_residual += static_cast<long double>(census.self_mirror_residual);
    }

    WalkReport report;
    report.config = cfg;
    long double sum = 0, sq = 0;
    const double alphabet = std::pow(2.0 * static_cast<double>(cfg.k), 2.0 * static_cast<double>(cfg.s));
    const double scale = cfg.t > 0 ? std::sqrt(static_cast<double>(cfg.t) / alphabet) : 0.0;
    for (double v : trial_means) {
        sum += v;
        sq += v * v;
    }
    report.mean_discrepancy = static_cast<double>(sum / cfg.trials);
    report.normalized_ratio = scale > 0 ? report.mean_discrepancy / scale : 0.0;
    if (cfg.trials >= 2 && scale > 0) {
        long double var = (sq - static_cast<long double>(cfg.trials) * (sum / cfg.trials) *
                                    (sum / cfg.trials)) /
                          static_cast<long double>(cfg.trials - 1);
        if (var < 0) {
            var = 0;
        }
        report.se_normalized =
            std::sqrt(static_cast<double>(var) / static_cast<double>(cfg.trials)) / scale;
        report.se_defined = true;
    } else {
        report.se_normalized = std::numeric_limits<double>::quiet_NaN();
        report.se_defined = false;
    }
    report.mean_pair_count = static_cast<double>(sum_pairs / cfg.trials);
    report.mean_self_mirror_classes = static_cast<double>(sum_self / cfg.trials);
    report.mean_self_mirror_residual = static_cast<double>(sum_self_residual / cfg.trials);
    return report;
}

// ---------------------------------------------------------------------------
// Trend report

TrendReport ratio_trend_report(std::span<const std::int64_t> n_grid, const SamplerConfig& base,
                               std::span<const BoundParams> grid) {
    if (n_grid.size() < 1) {
        throw std::invalid_argument("n grid must not be empty");
    }
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) {
            throw std::invalid_argument("n grid must be strictly ascending");
        }
    }
    TrendReport report;
    report.seed = base.master_seed;
    report.samples_per_n = base.sample_count;
    report.grid.assign(grid.begin(), grid.end());
    std::sort(report.grid.begin(), report.grid.end());
    report.grid.erase(std::unique(report.grid.begin(), report.grid.end()), report.grid.end());
    for (std::int64_t n : n_grid) {
        SamplerConfig cfg = base;
        cfg.n = n;
        TrendRow row;
        row.stats = estimate_stats(cfg, report.grid);
        row.avg_bound_over_n = row.stats.avg_bound.mean / static_cast<double>(n);
        row.eight_avg_bound_over_n = 8.0 * row.stats.avg_bound.mean / static_cast<double>(n);
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt_params(const BoundParams& p) {
    return "k" + std::to_string(p.k) + "s" + std::to_string(p.s);
}

} // namespace

std::string trend_report_csv(const TrendReport& report) {
    std::ostringstream os;
    os << "n,avg_ratio,se_ratio,avg_bound_over_n,eight_avg_bound_over_n,tail_fraction,"
          "best_params,avg_genus,se_genus,avg_bound,se_bound,se_tail,samples,complete,seed,grid\n";
    std::string grid_text;
    for (const BoundParams& p : report.grid) {
        if (!grid_text.empty()) {
            grid_text += '|';
        }
        grid_text += fmt_params(p);
    }
    for (const TrendRow& row : report.rows) {
        const StatsReport& st = row.stats;
        os << st.n << ',' << fmt_double(st.avg_ratio.mean) << ',' << fmt_double(st.avg_ratio.se)
           << ',' << fmt_double(row.avg_bound_over_n) << ','
           << fmt_double(row.eight_avg_bound_over_n) << ',' << fmt_double(st.tail_fraction.mean)
           << ',' << fmt_params(st.modal_params) << ',' << fmt_double(st.avg_genus.mean) << ','
           << fmt_double(st.avg_genus.se) << ',' << fmt_double(st.avg_bound.mean) << ','
           << fmt_double(st.avg_bound.se) << ',' << fmt_double(st.tail_fraction.se) << ','
           << st.avg_ratio.count << ',' << (st.incomplete ? 0 : 1) << ',' << st.seed << ','
           << grid_text << '\n';
    }
    return os.str();
}

} // namespace platgenus
