// Uniform sampling of signed words at fixed complexity n, estimators for the
// average genus / certified bound / ratio, and the random-walk discrepancy
// experiment over mirror summand classes.
//
// Determinism contract: every report is a pure function of (master seed,
// config, grid).  Each logical sample owns an engine derived from the master
// seed and its sample index, and reductions run in fixed index order, so the
// worker count never changes any output byte.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "platgenus/cobordism.hpp"
#include "platgenus/numbers.hpp"
#include "platgenus/rng.hpp"
#include "platgenus/twist_word.hpp"

namespace platgenus {

// Hard ceiling on samples per estimate; beyond it the report is truncated
// and flagged incomplete (a deterministic stand-in for a resource budget).
inline constexpr std::int64_t kDefaultSampleCap = 10'000'000;

// Exact-to-the-census sampler of uniform signed words at complexity n.
// The part-count distribution comes from the BigInt census, converted once
// to cumulative long doubles; compositions use uniform cut positions and
// signs are independent fair bits.
class WordSampler {
public:
    explicit WordSampler(std::int64_t n);

    std::int64_t n() const { return n_; }

    // Draws the pair count m (exposed for distribution tests).
    std::int64_t sample_pair_count(Rng& rng) const;

    TwistWord sample(Rng& rng) const;

    // Entries only, avoiding TwistWord re-validation in hot loops.
    void sample_entries(Rng& rng, std::vector<int>& out) const;

private:
    std::int64_t n_;
    std::vector<long double> cumulative_; // cumulative_[i] = P(m <= i+1)
};

struct SamplerConfig {
    std::int64_t n = 2;
    std::int64_t sample_count = 1;
    std::uint64_t master_seed = 0;
    int worker_count = 1; // <= 0: use hardware concurrency
    std::int64_t sample_cap = kDefaultSampleCap;

    void validate() const;
};

struct Estimate {
    double mean = 0.0;
    double se = 0.0; // sample standard error of the mean
    std::int64_t count = 0;
};

struct StatsReport {
    std::int64_t n = 0;
    Estimate avg_genus;
    Estimate avg_bound;
    Estimate avg_ratio;    // mean of bound/m, in [0,1]
    Estimate tail_fraction; // mean of [m <= n/8]
    std::vector<BoundParams> grid;
    BoundParams modal_params; // most frequently optimal grid point
    std::uint64_t seed = 0;
    std::int64_t samples_requested = 0;
    bool incomplete = false;
};

StatsReport estimate_stats(const SamplerConfig& cfg, std::span<const BoundParams> grid);

// Random-walk discrepancy over uniform length-2s words in the alphabet
// {-k,...,-1,1,...,k}: per trial, draw t summands, census them by class and
// average |a(w) - a(-w)| over the distinct mirror class pairs present.
// Amphichiral classes never contribute and are reported separately.
struct WalkConfig {
    std::int64_t k = 1;
    std::int64_t s = 1;
    std::int64_t t = 0; // summands per trial (0 allowed: empty census)
    std::int64_t trials = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct WalkReport {
    WalkConfig config;
    double mean_discrepancy = 0.0;   // mean over trials of the per-trial pair mean
    double normalized_ratio = 0.0;   // mean_discrepancy / sqrt(t / (2k)^{2s})
    double se_normalized = 0.0;      // standard error over trials; NaN if undefined
    bool se_defined = false;         // false when trials < 2
    double mean_pair_count = 0.0;    // distinct mirror class pairs per trial
    double mean_self_mirror_classes = 0.0;
    double mean_self_mirror_residual = 0.0; // unpaired amphichiral summands per trial
};

WalkReport walk_experiment(const WalkConfig& cfg);

// One estimate_stats row per n, with the derived trend columns.
struct TrendRow {
    StatsReport stats;
    double avg_bound_over_n = 0.0;
    double eight_avg_bound_over_n = 0.0;
};

struct TrendReport {
    std::vector<TrendRow> rows;
    std::vector<BoundParams> grid;
    std::uint64_t seed = 0;
    std::int64_t samples_per_n = 0;
};

TrendReport ratio_trend_report(std::span<const std::int64_t> n_grid, const SamplerConfig& base,
                               std::span<const BoundParams> grid);

// CSV emission for the trend report; byte-stable across worker counts.
std::string trend_report_csv(const TrendReport& report);

} // namespace platgenus
