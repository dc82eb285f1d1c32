// Command-line front end: exact census statistics, single-word cobordism
// bounds, Monte-Carlo trend sweeps, the random-walk discrepancy experiment,
// and word enumeration.  All randomized commands take an explicit --seed
// (default 1729) and are bit-reproducible for a fixed seed; the worker count
// never affects results.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "platgenus/cobordism.hpp"
#include "platgenus/csv.hpp"
#include "platgenus/montecarlo.hpp"
#include "platgenus/numbers.hpp"
#include "platgenus/partition_stats.hpp"
#include "platgenus/trace_io.hpp"
#include "platgenus/twist_word.hpp"

namespace {

using namespace platgenus;

constexpr std::uint64_t kDefaultSeed = 1729;

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kResourceCap = 2,
    kInvariantViolation = 3,
};

enum class Format { csv, json, table };

struct CommonOpts {
    std::string format = "auto";
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    int workers = 0; // 0: auto
    bool workers_from_env = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed = true) {
    cmd->add_option("--format", opts.format, "Output format: csv, json or table")
        ->check(CLI::IsMember({"auto", "csv", "json", "table"}));
    cmd->add_option("--out", opts.out_path, "Write output to PATH instead of stdout");
    if (with_seed) {
        cmd->add_option("--seed", opts.seed, "Master seed (default 1729)");
    }
    cmd->add_option("--workers", opts.workers,
                    "Worker thread count (0 = hardware; results never depend on it)");
}

Format resolve_format(const CommonOpts& opts) {
    if (opts.format == "csv") {
        return Format::csv;
    }
    if (opts.format == "json") {
        return Format::json;
    }
    if (opts.format == "table") {
        return Format::table;
    }
    // auto: human table on terminals, CSV when piped or written to a file
    if (opts.out_path.empty() && isatty(fileno(stdout))) {
        return Format::table;
    }
    return Format::csv;
}

int resolve_workers(CommonOpts& opts) {
    if (opts.workers > 0) {
        return opts.workers;
    }
    if (const char* env = std::getenv("PLATGENUS_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            opts.workers_from_env = true;
            return parsed;
        }
    }
    return 0;
}

void write_output(const CommonOpts& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(opts.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open output file: " + opts.out_path);
    }
    file << payload;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Simple right-aligned table for terminal output.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::ostringstream os;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) {
                os << "  ";
            }
            os << std::string(width[c] - row[c].size(), ' ') << row[c];
        }
        os << '\n';
    };
    emit_row(header);
    for (const auto& row : rows) {
        emit_row(row);
    }
    return os.str();
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
    std::vector<std::int64_t> out;
    std::stringstream ss{text};
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const std::int64_t v = std::stoll(tok, &used);
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
        }
    }
    if (out.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty list");
    }
    return out;
}

// ---------------------------------------------------------------------------
// exact

struct ExactOpts {
    CommonOpts common;
    std::int64_t n_max = 12;
    bool unsigned_counts = false;
    std::string mode = "words";
    std::int64_t cap = kDefaultEnumerationCap;
};

int run_exact(const ExactOpts& opts) {
    if (opts.n_max < 2) {
        throw std::invalid_argument("--n-max must be at least 2");
    }
    const bool signed_words = !opts.unsigned_counts;
    const AverageMode mode = opts.mode == "knots" ? AverageMode::knots : AverageMode::words;

    bool ratio_violated = false;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::vector<std::string>> table_rows;
    nlohmann::json json_rows = nlohmann::json::array();
    const BigRat quarter(1, 4);
    for (std::int64_t n = 2; n <= opts.n_max; ++n) {
        const ExactStat avg = avg_genus_exact(n, signed_words, mode, opts.cap);
        const ExactStat tail = tail_fraction(n, signed_words);
        const BigRat ratio = avg.value / n;
        if (ratio < quarter) {
            ratio_violated = true;
        }
        const BigInt avg_num = boost::multiprecision::numerator(avg.value);
        const BigInt avg_den = boost::multiprecision::denominator(avg.value);
        const BigInt tail_num = boost::multiprecision::numerator(tail.value);
        const BigInt tail_den = boost::multiprecision::denominator(tail.value);
        csv_rows.push_back({std::to_string(n), opts.mode, signed_words ? "1" : "0",
                            avg_num.str(), avg_den.str(), fmt_double(rat_as_double(ratio)),
                            tail_num.str(), tail_den.str()});
        table_rows.push_back({std::to_string(n), avg_num.str() + "/" + avg_den.str(),
                              fmt_double(rat_as_double(ratio)),
                              fmt_double(rat_as_double(tail.value))});
        nlohmann::json jr;
        jr["n"] = n;
        jr["mode"] = opts.mode;
        jr["signed"] = signed_words;
        jr["avg_genus_num"] = avg_num.str();
        jr["avg_genus_den"] = avg_den.str();
        jr["ratio_decimal"] = rat_as_double(ratio);
        jr["tail_num"] = tail_num.str();
        jr["tail_den"] = tail_den.str();
        json_rows.push_back(std::move(jr));
    }

    const Format format = resolve_format(opts.common);
    std::string payload;
    if (format == Format::csv) {
        std::vector<std::vector<std::string>> all;
        all.push_back({"n", "mode", "signed", "avg_genus_num", "avg_genus_den", "ratio_decimal",
                       "tail_num", "tail_den"});
        all.insert(all.end(), csv_rows.begin(), csv_rows.end());
        payload = csv_emit(all);
    } else if (format == Format::json) {
        nlohmann::json j;
        j["command"] = "exact";
        j["rows"] = std::move(json_rows);
        payload = j.dump(2) + "\n";
    } else {
        payload = render_table({"n", "avg_genus", "ratio", "tail_fraction"}, table_rows);
    }
    write_output(opts.common, payload);
    return ratio_violated ? kInvariantViolation : kOk;
}

// ---------------------------------------------------------------------------
// bound

struct BoundOpts {
    CommonOpts common;
    std::string word_text;
    std::int64_t k = 32;
    std::int64_t s = 2;
    bool show_trace = false;
};

int run_bound(const BoundOpts& opts) {
    const TwistWord word = TwistWord::parse(opts.word_text);
    const BoundParams params{opts.k, opts.s};
    params.validate();
    const BoundResult result = g4_upper_bound(word, params);
    const ReplayReport check = replay(result.trace);
    if (!check.ok) {
        std::cerr << "internal error: trace replay failed: " << check.message << '\n';
        return kInvariantViolation;
    }

    const Format format = resolve_format(opts.common);
    std::string payload;
    if (format == Format::json) {
        nlohmann::json j;
        j["command"] = "bound";
        j["word"] = word.str();
        j["n"] = word.complexity();
        j["m"] = word.pair_count();
        j["k"] = params.k;
        j["s"] = params.s;
        j["bound"] = result.bound;
        j["total_cost"] = result.trace.total_cost;
        j["asymptotic_regime"] = params.in_asymptotic_regime(word.complexity());
        if (opts.show_trace) {
            j["trace"] = nlohmann::json::parse(trace_to_json(result.trace));
        }
        payload = j.dump(2) + "\n";
    } else if (format == Format::csv) {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"word", "n", "m", "k", "s", "bound", "total_cost", "asymptotic_regime"});
        rows.push_back({word.str(), std::to_string(word.complexity()),
                        std::to_string(word.pair_count()), std::to_string(params.k),
                        std::to_string(params.s), std::to_string(result.bound),
                        std::to_string(result.trace.total_cost),
                        params.in_asymptotic_regime(word.complexity()) ? "1" : "0"});
        payload = csv_emit(rows);
        if (opts.show_trace) {
            payload += trace_to_text(result.trace);
        }
    } else {
        std::ostringstream os;
        os << "word   " << word.str() << '\n';
        os << "n      " << word.complexity() << '\n';
        os << "m      " << word.pair_count() << '\n';
        os << "params k=" << params.k << " s=" << params.s
           << (params.in_asymptotic_regime(word.complexity())
                   ? "  (asymptotic-estimate regime)"
                   : "  (outside the asymptotic-estimate regime)")
           << '\n';
        os << "bound  " << result.bound << "  (pipeline cost " << result.trace.total_cost
           << ", genus cap " << word.seifert_genus() << ")\n";
        if (opts.show_trace) {
            os << '\n' << trace_to_text(result.trace);
        }
        payload = os.str();
    }
    write_output(opts.common, payload);
    return kOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
    CommonOpts common;
    std::string n_grid_text = "100,1000,10000";
    std::string k_grid_text = "2,3,4";
    std::string s_grid_text = "1,2,3";
    std::int64_t samples = 1000;
    std::int64_t sample_cap = kDefaultSampleCap;
};

int run_sweep(SweepOpts& opts) {
    const std::vector<std::int64_t> n_grid = parse_int_list(opts.n_grid_text, "--n-grid");
    const std::vector<std::int64_t> k_grid = parse_int_list(opts.k_grid_text, "--k-grid");
    const std::vector<std::int64_t> s_grid = parse_int_list(opts.s_grid_text, "--s-grid");
    std::vector<BoundParams> grid;
    for (std::int64_t k : k_grid) {
        for (std::int64_t s : s_grid) {
            const BoundParams p{k, s};
            p.validate();
            grid.push_back(p);
        }
    }
    SamplerConfig base;
    base.sample_count = opts.samples;
    base.master_seed = opts.common.seed;
    base.worker_count = resolve_workers(opts.common);
    base.sample_cap = opts.sample_cap;
    if (opts.common.workers_from_env) {
        std::cerr << "# workers=" << base.worker_count << " (PLATGENUS_WORKERS)\n";
    }

    const TrendReport report = ratio_trend_report(n_grid, base, grid);

    bool incomplete = false;
    for (const TrendRow& row : report.rows) {
        incomplete = incomplete || row.stats.incomplete;
    }

    const Format format = resolve_format(opts.common);
    std::string payload;
    if (format == Format::json) {
        nlohmann::json j;
        j["command"] = "sweep";
        j["seed"] = report.seed;
        j["samples_per_n"] = report.samples_per_n;
        nlohmann::json jgrid = nlohmann::json::array();
        for (const BoundParams& p : report.grid) {
            jgrid.push_back({{"k", p.k}, {"s", p.s}});
        }
        j["grid"] = std::move(jgrid);
        nlohmann::json rows = nlohmann::json::array();
        for (const TrendRow& row : report.rows) {
            const StatsReport& st = row.stats;
            nlohmann::json jr;
            jr["n"] = st.n;
            jr["avg_ratio"] = st.avg_ratio.mean;
            jr["se_ratio"] = st.avg_ratio.se;
            jr["avg_bound_over_n"] = row.avg_bound_over_n;
            jr["eight_avg_bound_over_n"] = row.eight_avg_bound_over_n;
            jr["tail_fraction"] = st.tail_fraction.mean;
            jr["se_tail"] = st.tail_fraction.se;
            jr["avg_genus"] = st.avg_genus.mean;
            jr["se_genus"] = st.avg_genus.se;
            jr["avg_bound"] = st.avg_bound.mean;
            jr["se_bound"] = st.avg_bound.se;
            jr["best_params"] = {{"k", st.modal_params.k}, {"s", st.modal_params.s}};
            jr["samples"] = st.avg_ratio.count;
            jr["complete"] = !st.incomplete;
            rows.push_back(std::move(jr));
        }
        j["rows"] = std::move(rows);
        payload = j.dump(2) + "\n";
    } else if (format == Format::table) {
        std::vector<std::vector<std::string>> rows;
        for (const TrendRow& row : report.rows) {
            const StatsReport& st = row.stats;
            rows.push_back({std::to_string(st.n), fmt_double(st.avg_ratio.mean),
                            fmt_double(st.avg_ratio.se), fmt_double(row.avg_bound_over_n),
                            fmt_double(row.eight_avg_bound_over_n),
                            fmt_double(st.tail_fraction.mean),
                            "k" + std::to_string(st.modal_params.k) + "s" +
                                std::to_string(st.modal_params.s)});
        }
        payload = render_table(
            {"n", "avg_ratio", "se_ratio", "bound/n", "8*bound/n", "tail", "best_params"}, rows);
    } else {
        payload = trend_report_csv(report);
    }
    write_output(opts.common, payload);
    return incomplete ? kResourceCap : kOk;
}

// ---------------------------------------------------------------------------
// walk

struct WalkOpts {
    CommonOpts common;
    std::int64_t k = 1;
    std::int64_t s = 1;
    std::int64_t t = 100000;
    std::int64_t trials = 100;
};

int run_walk(const WalkOpts& opts) {
    WalkConfig cfg;
    cfg.k = opts.k;
    cfg.s = opts.s;
    cfg.t = opts.t;
    cfg.trials = opts.trials;
    cfg.seed = opts.common.seed;
    const WalkReport report = walk_experiment(cfg);

    const std::string se_text = report.se_defined ? fmt_double(report.se_normalized) : "nan";
    const Format format = resolve_format(opts.common);
    std::string payload;
    if (format == Format::json) {
        nlohmann::json j;
        j["command"] = "walk";
        j["k"] = cfg.k;
        j["s"] = cfg.s;
        j["t"] = cfg.t;
        j["trials"] = cfg.trials;
        j["seed"] = cfg.seed;
        j["mean_discrepancy"] = report.mean_discrepancy;
        j["normalized_ratio"] = report.normalized_ratio;
        if (report.se_defined) {
            j["se_normalized"] = report.se_normalized;
        } else {
            j["se_normalized"] = nullptr;
        }
        j["pairs_per_trial"] = report.mean_pair_count;
        j["self_mirror_classes_per_trial"] = report.mean_self_mirror_classes;
        j["self_mirror_residual_per_trial"] = report.mean_self_mirror_residual;
        payload = j.dump(2) + "\n";
    } else if (format == Format::csv) {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"k", "s", "t", "trials", "seed", "mean_discrepancy", "normalized_ratio",
                        "se_normalized", "pairs_per_trial", "self_mirror_classes_per_trial",
                        "self_mirror_residual_per_trial"});
        rows.push_back({std::to_string(cfg.k), std::to_string(cfg.s), std::to_string(cfg.t),
                        std::to_string(cfg.trials), std::to_string(cfg.seed),
                        fmt_double(report.mean_discrepancy), fmt_double(report.normalized_ratio),
                        se_text, fmt_double(report.mean_pair_count),
                        fmt_double(report.mean_self_mirror_classes),
                        fmt_double(report.mean_self_mirror_residual)});
        payload = csv_emit(rows);
    } else {
        std::ostringstream os;
        os << "alphabet        {-" << cfg.k << "..-1,1.." << cfg.k << "}, words of length "
           << 2 * cfg.s << '\n';
        os << "summands/trial  " << cfg.t << ", trials " << cfg.trials << ", seed " << cfg.seed
           << '\n';
        os << "mean |a(w)-a(-w)| over mirror pairs: " << fmt_double(report.mean_discrepancy)
           << '\n';
        os << "normalized by sqrt(t/(2k)^(2s)):     " << fmt_double(report.normalized_ratio)
           << '\n';
        if (report.se_defined) {
            os << "standard error (normalized):         " << se_text << '\n';
        } else {
            os << "standard error (normalized):         undefined (needs >= 2 trials)\n";
        }
        os << "mirror pairs per trial:              " << fmt_double(report.mean_pair_count)
           << '\n';
        os << "amphichiral classes per trial:       "
           << fmt_double(report.mean_self_mirror_classes) << " (residual "
           << fmt_double(report.mean_self_mirror_residual) << ")\n";
        payload = os.str();
    }
    write_output(opts.common, payload);
    return kOk;
}

// ---------------------------------------------------------------------------
// enumerate

struct EnumerateOpts {
    CommonOpts common;
    std::int64_t n = 4;
    bool classes = false;
    std::int64_t cap = kDefaultEnumerationCap;
};

int run_enumerate(const EnumerateOpts& opts) {
    std::ostringstream os;
    if (opts.classes) {
        std::set<std::vector<int>> seen;
        enumerate_words(
            opts.n,
            [&](const TwistWord& w) {
                const KnotClass cls(w);
                if (seen.insert(cls.word().entries()).second) {
                    os << cls.word().str() << '\n';
                }
            },
            opts.cap);
    } else {
        enumerate_words(
            opts.n, [&](const TwistWord& w) { os << w.str() << '\n'; }, opts.cap);
    }
    write_output(opts.common, os.str());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistics and certified smooth 4-genus upper bounds for 2-bridge knots\n"
                 "given as even 4-plat words (a_1,...,a_{2m}); entries are half-parameters,\n"
                 "i.e. the word 1,-1 denotes the knot with twist regions (2,-2)."};
    app.require_subcommand(1);

    ExactOpts exact_opts;
    CLI::App* exact = app.add_subcommand("exact", "Exact average-genus and tail table");
    exact->add_option("--n-max", exact_opts.n_max, "Largest complexity n (table runs 2..n-max)")
        ->required();
    exact->add_flag("--unsigned", exact_opts.unsigned_counts,
                    "Count unsigned compositions instead of signed words");
    exact->add_option("--mode", exact_opts.mode, "Average over words or knot classes")
        ->check(CLI::IsMember({"words", "knots"}));
    exact->add_option("--cap", exact_opts.cap, "Enumeration cap for knots mode");
    add_common(exact, exact_opts.common, /*with_seed=*/false);

    BoundOpts bound_opts;
    CLI::App* bound = app.add_subcommand("bound", "Certified 4-genus upper bound for one word");
    bound->add_option("--word", bound_opts.word_text, "Comma-separated half-parameters, e.g. 1,-1,2,-1")
        ->required();
    bound->add_option("--k", bound_opts.k, "Twist-size cutoff (k >= 1)");
    bound->add_option("--s", bound_opts.s, "Chunk half-length (s >= 1)");
    bound->add_flag("--trace", bound_opts.show_trace, "Print the replayable cobordism trace");
    add_common(bound, bound_opts.common, /*with_seed=*/false);

    SweepOpts sweep_opts;
    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo ratio trend over an n grid");
    sweep->add_option("--n-grid", sweep_opts.n_grid_text, "Comma-separated complexities");
    sweep->add_option("--samples", sweep_opts.samples, "Samples per n");
    sweep->add_option("--k-grid", sweep_opts.k_grid_text, "Comma-separated cutoffs");
    sweep->add_option("--s-grid", sweep_opts.s_grid_text, "Comma-separated chunk half-lengths");
    sweep->add_option("--sample-cap", sweep_opts.sample_cap, "Hard per-row sample budget");
    add_common(sweep, sweep_opts.common);

    WalkOpts walk_opts;
    CLI::App* walk = app.add_subcommand("walk", "Mirror-class random-walk discrepancy experiment");
    walk->add_option("--k", walk_opts.k, "Alphabet bound (letters -k..-1,1..k)");
    walk->add_option("--s", walk_opts.s, "Half-length of summand words");
    walk->add_option("--t", walk_opts.t, "Summands drawn per trial");
    walk->add_option("--trials", walk_opts.trials, "Number of trials");
    add_common(walk, walk_opts.common);

    EnumerateOpts enum_opts;
    CLI::App* enumerate = app.add_subcommand("enumerate", "List all signed words of complexity n");
    enumerate->add_option("--n", enum_opts.n, "Complexity to enumerate")->required();
    enumerate->add_flag("--classes", enum_opts.classes, "List canonical knot classes instead");
    enumerate->add_option("--cap", enum_opts.cap, "Enumeration cap (default 14)");
    add_common(enumerate, enum_opts.common, /*with_seed=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidationError;
    }

    try {
        if (exact->parsed()) {
            return run_exact(exact_opts);
        }
        if (bound->parsed()) {
            return run_bound(bound_opts);
        }
        if (sweep->parsed()) {
            return run_sweep(sweep_opts);
        }
        if (walk->parsed()) {
            return run_walk(walk_opts);
        }
        if (enumerate->parsed()) {
            return run_enumerate(enum_opts);
        }
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResourceCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvariantViolation;
    }
    return kValidationError;
}
