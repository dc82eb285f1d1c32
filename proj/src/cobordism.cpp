#include "platgenus/cobordism.hpp"

#include <algorithm>
#include <cstdlib>

namespace platgenus {

namespace {

std::int64_t abs64(int v) { return std::abs(static_cast<std::int64_t>(v)); }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

} // namespace

LargePairRemoval remove_large_pairs(const TwistWord& w, std::int64_t k) {
    if (k < 1) {
        throw std::invalid_argument("cutoff k must be >= 1");
    }
    LargePairRemoval out;
    const auto& e = w.entries();
    const std::int64_t m = w.pair_count();
    std::vector<int> kept;
    kept.reserve(e.size());
    for (std::int64_t i = 1; i <= m; ++i) {
        const int a = e[static_cast<std::size_t>(2 * i - 2)];
        const int b = e[static_cast<std::size_t>(2 * i - 1)];
        if (abs64(a) > k || abs64(b) > k) {
            out.removed_pair_indices.push_back(i);
        } else {
            kept.push_back(a);
            kept.push_back(b);
        }
    }
    if (!kept.empty()) {
        out.remaining = TwistWord(std::move(kept));
    }
    return out;
}

ChunkResult chunk(const TwistWord& w, std::int64_t s) {
    if (s < 1) {
        throw std::invalid_argument("chunk parameter s must be >= 1");
    }
    ChunkResult out;
    const auto& e = w.entries();
    const std::int64_t m = w.pair_count();
    const std::int64_t t = ceil_div(m, s + 1);
    for (std::int64_t j = 1; j < t; ++j) {
        out.split_pair_indices.push_back(j * (s + 1));
    }
    // summand j covers pairs [(j-1)(s+1)+1, j(s+1)-1]; the last runs to m
    for (std::int64_t j = 1; j <= t; ++j) {
        const std::int64_t first_pair = (j - 1) * (s + 1) + 1;
        const std::int64_t last_pair = (j < t) ? j * (s + 1) - 1 : m;
        std::vector<int> part(e.begin() + static_cast<std::ptrdiff_t>(2 * (first_pair - 1)),
                              e.begin() + static_cast<std::ptrdiff_t>(2 * last_pair));
        out.summands.emplace_back(std::move(part));
    }
    return out;
}

ConnectedSum ChunkResult::to_connected_sum() const {
    ConnectedSum cs;
    for (const TwistWord& w : summands) {
        cs.add(w);
    }
    return cs;
}

CancelResult cancel_mirror_pairs(const ConnectedSum& cs) {
    CancelResult out;
    for (const auto& [cls, count] : cs.counts()) {
        const KnotClass partner = cls.mirror_class();
        if (partner == cls) {
            const std::int64_t pairs = count / 2;
            out.cancelled_pairs += pairs;
            out.ribbon_part.add(cls, 2 * pairs);
            out.residual.add(cls, count % 2);
        } else if (cls < partner) {
            const std::int64_t other = cs.count_of(partner);
            const std::int64_t pairs = std::min(count, other);
            out.cancelled_pairs += pairs;
            out.ribbon_part.add(cls, pairs);
            out.ribbon_part.add(partner, pairs);
            out.residual.add(cls, count - pairs);
        } else {
            const std::int64_t other = cs.count_of(partner);
            if (count > other) {
                out.residual.add(cls, count - other);
            }
        }
    }
    return out;
}

ResidualRemoval remove_residual(const ConnectedSum& residual) {
    ResidualRemoval out;
    for (const auto& [cls, count] : residual.counts()) {
        const std::int64_t genus = cls.seifert_genus();
        for (std::int64_t i = 0; i < count; ++i) {
            out.steps.push_back(TraceStep{StepKind::RemoveResidual, 0, cls, std::nullopt, genus});
            out.total_cost += genus;
        }
    }
    return out;
}

BoundResult g4_upper_bound(const TwistWord& w, BoundParams p) {
    p.validate();
    const std::int64_t m = w.pair_count();

    CobordismTrace trace{w, p, {}, ConnectedSum{}, 0, 0};
    std::int64_t total = 0;

    const LargePairRemoval removal = remove_large_pairs(w, p.k);
    for (std::int64_t idx : removal.removed_pair_indices) {
        trace.steps.push_back(TraceStep{StepKind::RemoveLargePair, idx, std::nullopt, std::nullopt, 2});
        total += 2;
    }

    if (removal.remaining) {
        const ChunkResult chunks = chunk(*removal.remaining, p.s);
        for (std::int64_t idx : chunks.split_pair_indices) {
            trace.steps.push_back(TraceStep{StepKind::Split, idx, std::nullopt, std::nullopt, 1});
            total += 1;
        }
        const CancelResult cancel = cancel_mirror_pairs(chunks.to_connected_sum());
        for (const auto& [cls, count] : cancel.ribbon_part.counts()) {
            const KnotClass partner = cls.mirror_class();
            if (cls < partner) {
                for (std::int64_t i = 0; i < count; ++i) {
                    trace.steps.push_back(
                        TraceStep{StepKind::CancelMirrorPair, 0, cls, partner, 0});
                }
            } else if (cls == partner) {
                for (std::int64_t i = 0; i < count / 2; ++i) {
                    trace.steps.push_back(TraceStep{StepKind::CancelMirrorPair, 0, cls, cls, 0});
                }
            }
        }
        ResidualRemoval residual = remove_residual(cancel.residual);
        for (TraceStep& step : residual.steps) {
            trace.steps.push_back(std::move(step));
        }
        total += residual.total_cost;
        trace.final_sum = cancel.ribbon_part;
    }

    trace.total_cost = total;
    trace.bound = std::min(m, total);
    return BoundResult{trace.bound, std::move(trace)};
}

// ---------------------------------------------------------------------------
// Fast bound evaluation: the same pipeline on packed 64-bit summand codes.
// Applicable when k <= 15 (entry magnitudes fit 4 bits after removal) and
// s <= 5 (summands have at most 12 entries).  Entry i of a summand occupies
// the 5-bit group at shift 55-5i (sign bit 0x10 | magnitude), and the entry
// count sits in the top nibble, so equal words get equal codes.

namespace {

constexpr std::int64_t kFastMaxK = 15;
constexpr std::int64_t kFastMaxS = 5;

inline std::uint64_t encode_entry(int v) {
    return v < 0 ? (0x10u | static_cast<unsigned>(-v)) : static_cast<unsigned>(v);
}

inline std::uint64_t encode_span(const int* e, std::size_t len) {
    std::uint64_t code = static_cast<std::uint64_t>(len) << 60;
    int shift = 55;
    for (std::size_t i = 0; i < len; ++i, shift -= 5) {
        code |= encode_entry(e[i]) << shift;
    }
    return code;
}

inline std::uint64_t encode_span_negate_reverse(const int* e, std::size_t len) {
    std::uint64_t code = static_cast<std::uint64_t>(len) << 60;
    int shift = 55;
    for (std::size_t i = len; i-- > 0; shift -= 5) {
        code |= encode_entry(-e[i]) << shift;
    }
    return code;
}

inline std::uint64_t sign_mask_for(std::size_t len) {
    std::uint64_t mask = 0;
    int shift = 55;
    for (std::size_t i = 0; i < len; ++i, shift -= 5) {
        mask |= 0x10ULL << shift;
    }
    return mask;
}

inline std::size_t code_length(std::uint64_t code) {
    return static_cast<std::size_t>(code >> 60);
}

// Mirror class of a class code: decode the canonical word, flip all signs,
// re-canonicalize against its negate-reverse.
inline std::uint64_t mirror_class_code(std::uint64_t code) {
    const std::size_t len = code_length(code);
    const std::uint64_t mask = sign_mask_for(len);
    // negate-reverse of the decoded word, signs already flipped
    std::uint64_t nr = static_cast<std::uint64_t>(len) << 60;
    int out_shift = 55;
    int in_shift = 55 + 5 - 5 * static_cast<int>(len);
    for (std::size_t i = 0; i < len; ++i, out_shift -= 5, in_shift += 5) {
        const std::uint64_t group = (code >> in_shift) & 0x1F;
        nr |= group << out_shift; // net effect of two sign flips is none
    }
    return std::min(code ^ mask, nr);
}

} // namespace

std::int64_t g4_bound_value(const TwistWord& w, BoundParams p) {
    p.validate();
    if (p.k > kFastMaxK || p.s > kFastMaxS) {
        return g4_upper_bound(w, p).bound;
    }
    const auto& e = w.entries();
    const std::int64_t m = w.pair_count();

    std::vector<int> kept;
    kept.reserve(e.size());
    std::int64_t removed = 0;
    for (std::int64_t i = 0; i < m; ++i) {
        const int a = e[static_cast<std::size_t>(2 * i)];
        const int b = e[static_cast<std::size_t>(2 * i + 1)];
        if (abs64(a) > p.k || abs64(b) > p.k) {
            ++removed;
        } else {
            kept.push_back(a);
            kept.push_back(b);
        }
    }
    std::int64_t total = 2 * removed;
    if (kept.empty()) {
        return std::min(m, total);
    }

    const std::int64_t m2 = static_cast<std::int64_t>(kept.size() / 2);
    const std::int64_t t = ceil_div(m2, p.s + 1);
    total += t - 1;

    std::vector<std::uint64_t> codes;
    codes.reserve(static_cast<std::size_t>(t));
    for (std::int64_t j = 1; j <= t; ++j) {
        const std::int64_t first_pair = (j - 1) * (p.s + 1) + 1;
        const std::int64_t last_pair = (j < t) ? j * (p.s + 1) - 1 : m2;
        const std::size_t len = static_cast<std::size_t>(2 * (last_pair - first_pair + 1));
        const int* base = kept.data() + 2 * (first_pair - 1);
        codes.push_back(std::min(encode_span(base, len), encode_span_negate_reverse(base, len)));
    }
    std::sort(codes.begin(), codes.end());

    std::int64_t residual_cost = 0;
    std::size_t i = 0;
    while (i < codes.size()) {
        std::size_t j = i;
        while (j < codes.size() && codes[j] == codes[i]) {
            ++j;
        }
        const std::uint64_t cls = codes[i];
        const std::int64_t count = static_cast<std::int64_t>(j - i);
        const std::int64_t genus = static_cast<std::int64_t>(code_length(cls) / 2);
        const std::uint64_t partner = mirror_class_code(cls);
        if (partner == cls) {
            residual_cost += (count % 2) * genus;
        } else if (partner > cls) {
            const auto range = std::equal_range(codes.begin(), codes.end(), partner);
            const std::int64_t other = range.second - range.first;
            residual_cost += std::abs(count - other) * genus;
        } else if (!std::binary_search(codes.begin(), codes.end(), partner)) {
            residual_cost += count * genus;
        }
        i = j;
    }
    total += residual_cost;
    return std::min(m, total);
}

BestBound g4_upper_bound_best(const TwistWord& w, std::span<const BoundParams> grid) {
    if (grid.empty()) {
        throw std::invalid_argument("parameter grid must not be empty");
    }
    std::vector<BoundParams> order(grid.begin(), grid.end());
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());

    BoundResult first = g4_upper_bound(w, order.front());
    BestBound best{first.bound, order.front(), std::move(first.trace)};
    for (std::size_t i = 1; i < order.size(); ++i) {
        BoundResult r = g4_upper_bound(w, order[i]);
        if (r.bound < best.bound) {
            best = BestBound{r.bound, order[i], std::move(r.trace)};
        }
    }
    return best;
}

std::int64_t g4_bound_value_best(const TwistWord& w, std::span<const BoundParams> grid,
                                 BoundParams* chosen) {
    if (grid.empty()) {
        throw std::invalid_argument("parameter grid must not be empty");
    }
    std::vector<BoundParams> order(grid.begin(), grid.end());
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());

    std::int64_t best = -1;
    for (const BoundParams& p : order) {
        const std::int64_t b = g4_bound_value(w, p);
        if (best < 0 || b < best) {
            best = b;
            if (chosen) {
                *chosen = p;
            }
        }
    }
    return best;
}

WorstCaseBound worst_case_bound(std::int64_t n, BoundParams p) {
    p.validate();
    if (n < 2) {
        throw std::invalid_argument("complexity n must be at least 2");
    }
    const BigFloat nf(n);
    const BigFloat kf(p.k);
    const BigFloat sf(p.s);
    WorstCaseBound out;
    out.removal_term = 2 * nf / kf;
    out.split_term = nf / (2 * (sf + 1));
    const BigFloat alphabet_power = boost::multiprecision::pow(2 * kf, static_cast<int>(2 * p.s));
    out.residual_term =
        (sf / 2) * alphabet_power *
        boost::multiprecision::sqrt(nf / (2 * (sf + 1) * alphabet_power));
    out.total = out.removal_term + out.split_term + out.residual_term;
    return out;
}

BigFloat worst_case_limit_ratio(BoundParams p) {
    p.validate();
    return BigFloat(2) / p.k + BigFloat(1) / (2 * (BigFloat(p.s) + 1));
}

// ---------------------------------------------------------------------------
// Replay

namespace {

ReplayReport fail_at(std::int64_t step, std::string message) {
    return ReplayReport{false, step, std::move(message), 0};
}

} // namespace

ReplayReport replay(const CobordismTrace& trace) {
    const TwistWord& w = trace.initial_word;
    const std::int64_t k = trace.params.k;
    const std::int64_t s = trace.params.s;
    const std::int64_t m = w.pair_count();
    if (k < 1 || s < 1) {
        return fail_at(-1, "invalid parameters");
    }

    // partition steps, enforcing pipeline order
    std::vector<std::int64_t> removals;
    std::vector<std::int64_t> splits;
    std::vector<std::pair<KnotClass, KnotClass>> cancels;
    std::vector<std::pair<KnotClass, std::int64_t>> residuals;
    std::int64_t total = 0;
    int phase = 0;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& step = trace.steps[i];
        const auto idx = static_cast<std::int64_t>(i);
        total += step.genus_cost;
        switch (step.kind) {
        case StepKind::RemoveLargePair:
            if (phase > 0) {
                return fail_at(idx, "large-pair removal after a later phase");
            }
            if (step.genus_cost != 2) {
                return fail_at(idx, "large-pair removal must cost 2");
            }
            if (step.pair_index < 1 || step.pair_index > m) {
                return fail_at(idx, "pair index out of range");
            }
            if (!removals.empty() && removals.back() >= step.pair_index) {
                return fail_at(idx, "removal indices must be strictly ascending");
            }
            removals.push_back(step.pair_index);
            break;
        case StepKind::Split:
            if (phase > 1) {
                return fail_at(idx, "split after a later phase");
            }
            phase = 1;
            if (step.genus_cost != 1) {
                return fail_at(idx, "split must cost 1");
            }
            splits.push_back(step.pair_index);
            break;
        case StepKind::CancelMirrorPair:
            if (phase > 2) {
                return fail_at(idx, "cancellation after residual removal");
            }
            phase = 2;
            if (step.genus_cost != 0) {
                return fail_at(idx, "mirror-pair cancellation must cost 0");
            }
            if (!step.cls || !step.mirror_cls) {
                return fail_at(idx, "cancellation step lacks class data");
            }
            if (step.cls->mirror_class() != *step.mirror_cls) {
                return fail_at(idx, "claimed mirror class does not match");
            }
            cancels.emplace_back(*step.cls, *step.mirror_cls);
            break;
        case StepKind::RemoveResidual:
            phase = 3;
            if (!step.cls) {
                return fail_at(idx, "residual step lacks class data");
            }
            if (step.genus_cost != step.cls->seifert_genus()) {
                return fail_at(idx, "residual removal must cost the summand genus");
            }
            residuals.emplace_back(*step.cls, idx);
            break;
        }
    }

    // phase 1: verify the removal set matches the cutoff rule exactly
    {
        std::size_t next = 0;
        for (std::int64_t i = 1; i <= m; ++i) {
            const bool large = abs64(w[static_cast<std::size_t>(2 * i - 2)]) > k ||
                               abs64(w[static_cast<std::size_t>(2 * i - 1)]) > k;
            const bool listed = next < removals.size() && removals[next] == i;
            if (large && !listed) {
                return fail_at(-1, "pair " + std::to_string(i) + " exceeds the cutoff but was not removed");
            }
            if (!large && listed) {
                return fail_at(-1, "pair " + std::to_string(i) + " was removed but is within the cutoff");
            }
            if (listed) {
                ++next;
            }
        }
        if (next != removals.size()) {
            return fail_at(-1, "removal list contains extra entries");
        }
    }
    std::vector<int> kept;
    {
        std::size_t next = 0;
        for (std::int64_t i = 1; i <= m; ++i) {
            if (next < removals.size() && removals[next] == i) {
                ++next;
                continue;
            }
            kept.push_back(w[static_cast<std::size_t>(2 * i - 2)]);
            kept.push_back(w[static_cast<std::size_t>(2 * i - 1)]);
        }
    }

    ConnectedSum pool;
    if (kept.empty()) {
        if (!splits.empty() || !cancels.empty() || !residuals.empty()) {
            return fail_at(-1, "steps remain after the word became empty");
        }
    } else {
        const TwistWord reduced{kept};
        const std::int64_t m2 = reduced.pair_count();
        const std::int64_t t = ceil_div(m2, s + 1);
        if (static_cast<std::int64_t>(splits.size()) != t - 1) {
            return fail_at(-1, "expected " + std::to_string(t - 1) + " splits, trace has " +
                                   std::to_string(splits.size()));
        }
        for (std::size_t j = 0; j < splits.size(); ++j) {
            if (splits[j] != static_cast<std::int64_t>(j + 1) * (s + 1)) {
                return fail_at(-1, "split positions must be the multiples of s+1");
            }
        }
        const ChunkResult chunks = chunk(reduced, s);
        pool = chunks.to_connected_sum();
    }

    ConnectedSum final_check;
    std::map<KnotClass, std::int64_t> pool_counts(pool.counts());
    auto take = [&pool_counts](const KnotClass& c, std::int64_t howmany) {
        auto it = pool_counts.find(c);
        if (it == pool_counts.end() || it->second < howmany) {
            return false;
        }
        it->second -= howmany;
        if (it->second == 0) {
            pool_counts.erase(it);
        }
        return true;
    };
    for (const auto& [cls, partner] : cancels) {
        const bool ok = (cls == partner) ? take(cls, 2) : (take(cls, 1) && take(partner, 1));
        if (!ok) {
            return fail_at(-1, "cancellation refers to summands that are not present");
        }
        final_check.add(cls, 1);
        final_check.add(partner, 1);
    }
    ConnectedSum removed_residual;
    for (const auto& [cls, step_idx] : residuals) {
        if (!take(cls, 1)) {
            return fail_at(step_idx, "residual summand not present");
        }
        removed_residual.add(cls, 1);
    }
    if (!pool_counts.empty()) {
        return fail_at(-1, "summands left unaccounted after all steps");
    }
    // the residual must not hide a cancellable mirror pair
    for (const auto& [cls, count] : removed_residual.counts()) {
        const KnotClass partner = cls.mirror_class();
        if (partner == cls) {
            if (count > 1) {
                return fail_at(-1, "residual keeps a cancellable amphichiral pair");
            }
        } else if (removed_residual.count_of(partner) > 0) {
            return fail_at(-1, "residual keeps a cancellable mirror pair");
        }
    }
    if (!(final_check == trace.final_sum)) {
        return fail_at(-1, "final state does not match the recorded ribbon sum");
    }
    if (!trace.final_sum.is_mirror_paired()) {
        return fail_at(-1, "final state is not a union of mirror pairs");
    }
    if (total != trace.total_cost) {
        return fail_at(-1, "step costs sum to " + std::to_string(total) + ", trace claims " +
                               std::to_string(trace.total_cost));
    }
    if (trace.bound != std::min(m, total)) {
        return fail_at(-1, "recorded bound is not min(genus, total cost)");
    }
    return ReplayReport{true, -1, "", total};
}

} // namespace platgenus
