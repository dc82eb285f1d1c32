// Exact combinatorics of signed/unsigned ordered even compositions of n.
//
// A word (a_1,...,a_{2m}) with complexity n corresponds to a composition of
// n into 2m positive parts plus a sign vector.  Counting compositions with
// 2m parts gives C(n-1, 2m-1); each carries 2^{2m} sign choices.  Everything
// in this module is exact: BigInt counts, BigRat statistics, no floating
// point anywhere.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "platgenus/numbers.hpp"
#include "platgenus/twist_word.hpp"

namespace platgenus {

// Full enumeration is ~3^{n-1} words; beyond this cap we refuse.
inline constexpr std::int64_t kDefaultEnumerationCap = 14;

class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::int64_t n, std::int64_t cap)
        : std::runtime_error("enumeration of n=" + std::to_string(n) +
                             " refused: exceeds the enumeration cap " + std::to_string(cap)),
          n_(n),
          cap_(cap) {}

    std::int64_t n() const { return n_; }
    std::int64_t cap() const { return cap_; }

private:
    std::int64_t n_;
    std::int64_t cap_;
};

enum class AverageMode { words, knots };

// Per-m word counts at fixed complexity n.
struct CompositionCensus {
    std::int64_t n = 0;
    bool signed_counts = false;
    std::vector<BigInt> per_m; // per_m[m-1] = count of words with 2m parts

    static CompositionCensus build(std::int64_t n, bool signed_counts);

    std::int64_t max_m() const { return static_cast<std::int64_t>(per_m.size()); }
    const BigInt& count_for(std::int64_t m) const; // zero outside [1, max_m]
    BigInt total() const;
};

// Number of (signed or unsigned) words of complexity n.
BigInt count_words(std::int64_t n, bool signed_words);

// 3^{n-1} + (-1)^n.  Redundant cross-check of the signed census total; the
// census itself is always computed from the binomial sums.
BigInt signed_count_closed_form(std::int64_t n);

struct ExactStat {
    BigRat value;
    std::int64_t n = 0;
    AverageMode mode = AverageMode::words;
    bool signed_words = false;
};

// Exact average Seifert genus at complexity n.  words: weighted census
// average of m.  knots: enumerate, deduplicate by class, then average
// (requires n within the enumeration cap).
ExactStat avg_genus_exact(std::int64_t n, bool signed_words, AverageMode mode,
                          std::int64_t cap = kDefaultEnumerationCap);

// Exact fraction of words with m <= threshold * n.
ExactStat tail_fraction(std::int64_t n, const BigRat& threshold, bool signed_words);

inline ExactStat tail_fraction(std::int64_t n, bool signed_words) {
    return tail_fraction(n, BigRat(1, 8), signed_words);
}

// Streams every signed word of complexity n exactly once (compositions in
// lexicographic order, sign vectors in binary-counter order).
void enumerate_words(std::int64_t n, const std::function<void(const TwistWord&)>& visit,
                     std::int64_t cap = kDefaultEnumerationCap);

// Distinct knot classes of complexity n, per m.  result[m-1] = class count.
std::vector<std::int64_t> class_census(std::int64_t n, std::int64_t cap = kDefaultEnumerationCap);

// Exact average-genus ratio table for n in [2, n_max]: confirms the ratio
// <g>_n / n never drops below 1/4 and reports the minimum attained.
struct GenusRatioRow {
    std::int64_t n = 0;
    BigRat avg_genus;
    BigRat ratio; // avg_genus / n
    BigRat tail;  // tail_fraction at threshold 1/8
    bool ok = false;
};

struct GenusRatioReport {
    std::vector<GenusRatioRow> rows;
    BigRat min_ratio;
    std::int64_t min_ratio_n = 0;
    bool all_ok = false;
};

GenusRatioReport genus_ratio_check(std::int64_t n_max, bool signed_words = true);

} // namespace platgenus
