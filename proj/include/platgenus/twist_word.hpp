// Data model for 2-bridge knots in even 4-plat presentation.
//
// A word (a_1,...,a_{2m}) of nonzero integers encodes the knot with twist
// regions of 2a_1,...,2a_{2m} crossings.  Two words present the same knot
// exactly when one is the negate-reverse of the other, so knot classes are
// keyed by the lexicographic minimum of the pair.  All types here are
// immutable values; operations return new values.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace platgenus {

class TwistWord {
public:
    // Validates: nonzero entries, even length >= 2.
    explicit TwistWord(std::vector<int> entries);

    // Parses the comma-separated half-parameter format, e.g. "1,-1,2,-1".
    // Rejects zeros, odd lengths and empty input, naming the offending token.
    static TwistWord parse(std::string_view text);

    const std::vector<int>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }

    // m: number of twist-region pairs (a_{2i-1}, a_{2i}).
    std::int64_t pair_count() const { return static_cast<std::int64_t>(entries_.size() / 2); }

    // n = sum |a_i|
    std::int64_t complexity() const;

    // Seifert genus of the presented knot: equals m for even 4-plat words.
    std::int64_t seifert_genus() const { return pair_count(); }

    // (-a_{2m}, ..., -a_1); an involution.
    TwistWord negate_reverse() const;

    // Entrywise negation (-a_1, ..., -a_{2m}); the mirror image.
    TwistWord mirror() const;

    std::string str() const;

    bool operator==(const TwistWord&) const = default;
    // Total order: length first, then lexicographic on entries.  Words in
    // one symmetry class always share a length, so canonicalization only
    // ever exercises the lexicographic part.
    std::strong_ordering operator<=>(const TwistWord& other) const;

private:
    std::vector<int> entries_;
};

// Certified enclosure of the crossing number: [n+1, 2n].
struct CrossingBounds {
    std::int64_t lower;
    std::int64_t upper;
};

CrossingBounds crossing_bounds(const TwistWord& w);

// Canonical representative of a word under the negate-reverse symmetry:
// min(w, negate_reverse(w)).  Idempotent by construction.
class KnotClass {
public:
    explicit KnotClass(const TwistWord& w);

    const TwistWord& word() const { return canonical_; }
    std::int64_t seifert_genus() const { return canonical_.seifert_genus(); }
    std::int64_t complexity() const { return canonical_.complexity(); }

    // The class of the mirror image.  Well defined: mirroring commutes with
    // negate-reverse, so it descends to classes.
    KnotClass mirror_class() const { return KnotClass(canonical_.mirror()); }

    bool is_amphichiral() const { return mirror_class() == *this; }

    bool operator==(const KnotClass&) const = default;
    std::strong_ordering operator<=>(const KnotClass&) const = default;

private:
    TwistWord canonical_;
};

inline KnotClass canonicalize(const TwistWord& w) { return KnotClass(w); }

// Multiset of knot classes; the empty sum is the unknot.
class ConnectedSum {
public:
    ConnectedSum() = default;

    void add(const KnotClass& c, std::int64_t count = 1);
    void add(const TwistWord& w, std::int64_t count = 1) { add(KnotClass(w), count); }

    bool empty() const { return counts_.empty(); }
    std::int64_t summand_count() const;
    std::int64_t total_genus() const;
    std::int64_t count_of(const KnotClass& c) const;

    const std::map<KnotClass, std::int64_t>& counts() const { return counts_; }

    // True when every class is matched by its mirror class in equal number
    // (amphichiral classes in even number): such a sum is a ribbon knot.
    bool is_mirror_paired() const;

    // Summands joined by " ; ", each in word text format; "empty" for the unknot.
    std::string str() const;

    bool operator==(const ConnectedSum&) const = default;

private:
    std::map<KnotClass, std::int64_t> counts_;
};

} // namespace platgenus
