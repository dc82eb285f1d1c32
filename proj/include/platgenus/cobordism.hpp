// Constructive cobordism pipeline producing certified upper bounds on the
// smooth 4-genus of a 2-bridge knot given by an even 4-plat word.
//
// The pipeline, for parameters (k, s):
//   1. remove every aligned twist-region pair with an entry exceeding k
//      in absolute value                          — genus 2 per pair
//   2. split the remaining word at pair indices (s+1), 2(s+1), ...,
//      deleting the pair at each split position   — genus 1 per split
//   3. cancel summands against their mirror classes, which pair off into
//      ribbon connected sums                      — genus 0
//   4. remove the unpaired residual summands      — genus = their Seifert genus
// The certified bound is min(seifert genus, total pipeline cost); the trace
// records every step and can be replayed independently.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "platgenus/numbers.hpp"
#include "platgenus/twist_word.hpp"

namespace platgenus {

struct BoundParams {
    std::int64_t k = 1; // twist-size cutoff for large-pair removal
    std::int64_t s = 1; // half-length of connected-sum chunks

    void validate() const {
        if (k < 1 || s < 1) {
            throw std::invalid_argument("bound parameters require k >= 1 and s >= 1");
        }
    }

    // Every individual move is valid for any k, s >= 1; the closed-form
    // worst-case estimate additionally assumes this regime.
    bool in_asymptotic_regime(std::int64_t n) const { return k >= 32 && s >= 2 && k < n && s < n; }

    bool operator==(const BoundParams&) const = default;
    auto operator<=>(const BoundParams&) const = default;
};

enum class StepKind { RemoveLargePair, Split, CancelMirrorPair, RemoveResidual };

struct TraceStep {
    StepKind kind{};
    // RemoveLargePair: 1-based pair index in the initial word.
    // Split: 1-based pair index in the reduced word (multiples of s+1).
    std::int64_t pair_index = 0;
    // CancelMirrorPair: cls + mirror_cls; RemoveResidual: cls.
    std::optional<KnotClass> cls;
    std::optional<KnotClass> mirror_cls;
    std::int64_t genus_cost = 0;

    bool operator==(const TraceStep&) const = default;
};

struct CobordismTrace {
    TwistWord initial_word;
    BoundParams params;
    std::vector<TraceStep> steps;
    ConnectedSum final_sum; // the mirror-paired (ribbon) summands that remain
    std::int64_t total_cost = 0;
    std::int64_t bound = 0; // min(seifert genus, total_cost)

    bool operator==(const CobordismTrace&) const = default;
};

// Step 1.  Pairs are judged against the original word and deleted
// simultaneously; the remainder may be empty (the unknot).
struct LargePairRemoval {
    std::optional<TwistWord> remaining;
    std::vector<std::int64_t> removed_pair_indices; // 1-based, ascending
    std::int64_t removed_pair_count() const {
        return static_cast<std::int64_t>(removed_pair_indices.size());
    }
};

LargePairRemoval remove_large_pairs(const TwistWord& w, std::int64_t k);

// Step 2.  t = ceil(m / (s+1)) summands; the split at pair index i deletes
// the pair (a_{2i-1}, a_{2i}).  Summands keep positional order; the first
// t-1 have exactly 2s twist regions, the last between 2 and 2(s+1).
struct ChunkResult {
    std::vector<TwistWord> summands;
    std::vector<std::int64_t> split_pair_indices; // 1-based, ascending
    std::int64_t split_count() const {
        return static_cast<std::int64_t>(split_pair_indices.size());
    }
    ConnectedSum to_connected_sum() const;
};

ChunkResult chunk(const TwistWord& w, std::int64_t s);

// Step 3.  Pairs each class against its mirror class: min(count, mirror
// count) pairs per distinct class pair, floor(count/2) for amphichiral
// classes.  Paired summands form the ribbon part; the rest is residual.
struct CancelResult {
    ConnectedSum residual;
    ConnectedSum ribbon_part;
    std::int64_t cancelled_pairs = 0;
};

CancelResult cancel_mirror_pairs(const ConnectedSum& cs);

// Step 4.  One step per residual summand, at its Seifert genus.
struct ResidualRemoval {
    std::vector<TraceStep> steps;
    std::int64_t total_cost = 0;
};

ResidualRemoval remove_residual(const ConnectedSum& residual);

struct BoundResult {
    std::int64_t bound = 0;
    CobordismTrace trace;
};

BoundResult g4_upper_bound(const TwistWord& w, BoundParams p);

// Same pipeline without materializing the trace; used by the samplers.
// Agrees with g4_upper_bound(w, p).bound for every input.
std::int64_t g4_bound_value(const TwistWord& w, BoundParams p);

struct BestBound {
    std::int64_t bound = 0;
    BoundParams params;
    CobordismTrace trace;
};

// Minimum over a nonempty grid; ties broken by smaller k, then smaller s.
BestBound g4_upper_bound_best(const TwistWord& w, std::span<const BoundParams> grid);
std::int64_t g4_bound_value_best(const TwistWord& w, std::span<const BoundParams> grid,
                                 BoundParams* chosen = nullptr);

// The closed-form worst-case genus estimate
//   2n/k + n/(2(s+1)) + (s/2) (2k)^{2s} sqrt(n / (2(s+1)(2k)^{2s}))
// evaluated verbatim in 50-digit floats, term by term.
struct WorstCaseBound {
    BigFloat removal_term;
    BigFloat split_term;
    BigFloat residual_term;
    BigFloat total;
};

WorstCaseBound worst_case_bound(std::int64_t n, BoundParams p);

// lim_{n->inf} worst_case_bound(n,p)/n = 2/k + 1/(2(s+1)).
BigFloat worst_case_limit_ratio(BoundParams p);

// Re-executes a trace from its initial word, checking every step's kind,
// position, class bookkeeping and genus cost, and that the final state is
// empty or consists solely of cancelled mirror pairs.
struct ReplayReport {
    bool ok = false;
    std::int64_t failed_step = -1; // 0-based index into steps, -1 if none
    std::string message;
    std::int64_t total_cost = 0;
};

ReplayReport replay(const CobordismTrace& trace);

} // namespace platgenus
