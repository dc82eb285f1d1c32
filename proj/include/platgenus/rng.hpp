// Deterministic seeding utilities for the Monte-Carlo module.
//
// Every parallel task derives its own engine from (master_seed, stream ids)
// through splitmix64, so results depend only on the seed and the logical
// sample index, never on the worker count or scheduling order.

#pragma once

#include <cstdint>
#include <random>

namespace platgenus {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(master ^ 0xA0761D6478BD642FULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

inline Rng make_engine(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return Rng(mix_seed(master, a, b));
}

// Uniform integer in [0, bound), bound >= 1.  Multiply-shift with rejection,
// exact (no modulo bias).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0ULL - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

// Uniform in [0,1) with 64-bit resolution.
inline long double uniform_unit(Rng& rng) {
    return static_cast<long double>(rng()) * 0x1p-64L;
}

// Draws single bits from a pooled 64-bit word.
class BitDrawer {
public:
    explicit BitDrawer(Rng& rng) : rng_(rng) {}

    bool next() {
        if (left_ == 0) {
            pool_ = rng_();
            left_ = 64;
        }
        const bool bit = (pool_ & 1ULL) != 0;
        pool_ >>= 1;
        --left_;
        return bit;
    }

private:
    Rng& rng_;
    std::uint64_t pool_ = 0;
    int left_ = 0;
};

} // namespace platgenus
