#include "platgenus/partition_stats.hpp"

#include <algorithm>
#include <set>

namespace platgenus {

namespace {

void require_n(std::int64_t n) {
    if (n < 2) {
        throw std::invalid_argument("complexity n must be at least 2, got " + std::to_string(n));
    }
}

} // namespace

CompositionCensus CompositionCensus::build(std::int64_t n, bool signed_counts) {
    require_n(n);
    CompositionCensus census;
    census.n = n;
    census.signed_counts = signed_counts;
    census.per_m.reserve(static_cast<std::size_t>(n / 2));
    // C(n-1, 2m-1), advanced two columns per step; signed counts carry 4^m.
    const std::int64_t big_n = n - 1;
    BigInt binom = big_n; // C(n-1, 1)
    BigInt weight = 4;
    for (std::int64_t m = 1; 2 * m <= n; ++m) {
        census.per_m.push_back(signed_counts ? BigInt(binom * weight) : binom);
        const std::int64_t j = 2 * m - 1;
        if (j + 2 <= big_n) {
            binom *= (big_n - j) * (big_n - j - 1);
            binom /= (j + 1) * (j + 2);
            weight *= 4;
        } else {
            binom = 0;
        }
    }
    return census;
}

const BigInt& CompositionCensus::count_for(std::int64_t m) const {
    static const BigInt zero = 0;
    if (m < 1 || m > max_m()) {
        return zero;
    }
    return per_m[static_cast<std::size_t>(m - 1)];
}

BigInt CompositionCensus::total() const {
    BigInt t = 0;
    for (const BigInt& c : per_m) {
        t += c;
    }
    return t;
}

BigInt count_words(std::int64_t n, bool signed_words) {
    return CompositionCensus::build(n, signed_words).total();
}

BigInt signed_count_closed_form(std::int64_t n) {
    require_n(n);
    BigInt p = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n - 1));
    return (n % 2 == 0) ? BigInt(p + 1) : BigInt(p - 1);
}

void enumerate_words(std::int64_t n, const std::function<void(const TwistWord&)>& visit,
                     std::int64_t cap) {
    require_n(n);
    if (n > cap) {
        throw CapExceeded(n, cap);
    }
    if (n > 40) {
        // 3^(n-1) words; beyond this the sign-pattern counter would also
        // outgrow 64 bits
        throw std::invalid_argument("enumeration is not supported beyond n = 40");
    }
    std::vector<std::int64_t> rest; // nonneg composition of n-j into j slots
    std::vector<int> word;
    for (std::int64_t m = 1; 2 * m <= n; ++m) {
        const std::size_t j = static_cast<std::size_t>(2 * m);
        const std::int64_t spare = n - static_cast<std::int64_t>(j);
        rest.assign(j, 0);
        rest[0] = spare;
        while (true) {
            const std::uint64_t sign_patterns = 1ULL << j;
            for (std::uint64_t bits = 0; bits < sign_patterns; ++bits) {
                word.resize(j);
                for (std::size_t i = 0; i < j; ++i) {
                    const int part = static_cast<int>(rest[i] + 1);
                    word[i] = ((bits >> i) & 1ULL) ? -part : part;
                }
                visit(TwistWord(word));
            }
            if (rest[j - 1] == spare) {
                break;
            }
            // classic successor for compositions into nonnegative parts
            std::size_t h = 0;
            while (rest[h] == 0) {
                ++h;
            }
            const std::int64_t t = rest[h];
            rest[h] = 0;
            rest[0] = t - 1;
            rest[h + 1] += 1;
        }
    }
}

std::vector<std::int64_t> class_census(std::int64_t n, std::int64_t cap) {
    require_n(n);
    if (n > cap) {
        throw CapExceeded(n, cap);
    }
    // Classes never mix lengths, so deduplicate one m-stratum at a time.
    std::vector<std::int64_t> result(static_cast<std::size_t>(n / 2), 0);
    std::set<std::vector<int>> seen;
    std::int64_t current_m = 0;
    auto flush = [&]() {
        if (current_m >= 1) {
            result[static_cast<std::size_t>(current_m - 1)] =
                static_cast<std::int64_t>(seen.size());
        }
        seen.clear();
    };
    enumerate_words(
        n,
        [&](const TwistWord& w) {
            if (w.pair_count() != current_m) {
                flush();
                current_m = w.pair_count();
            }
            seen.insert(KnotClass(w).word().entries());
        },
        cap);
    flush();
    return result;
}

ExactStat avg_genus_exact(std::int64_t n, bool signed_words, AverageMode mode, std::int64_t cap) {
    require_n(n);
    BigInt weighted = 0;
    BigInt total = 0;
    if (mode == AverageMode::words) {
        const CompositionCensus census = CompositionCensus::build(n, signed_words);
        for (std::int64_t m = 1; m <= census.max_m(); ++m) {
            weighted += census.count_for(m) * m;
            total += census.count_for(m);
        }
    } else {
        const std::vector<std::int64_t> classes = class_census(n, cap);
        for (std::size_t i = 0; i < classes.size(); ++i) {
            weighted += BigInt(classes[i]) * static_cast<std::int64_t>(i + 1);
            total += classes[i];
        }
    }
    return ExactStat{BigRat(weighted, total), n, mode, signed_words};
}

ExactStat tail_fraction(std::int64_t n, const BigRat& threshold, bool signed_words) {
    require_n(n);
    const CompositionCensus census = CompositionCensus::build(n, signed_words);
    const BigRat cutoff = threshold * n;
    BigInt below = 0;
    for (std::int64_t m = 1; m <= census.max_m(); ++m) {
        if (BigRat(m) <= cutoff) {
            below += census.count_for(m);
        }
    }
    return ExactStat{BigRat(below, census.total()), n, AverageMode::words, signed_words};
}

GenusRatioReport genus_ratio_check(std::int64_t n_max, bool signed_words) {
    require_n(n_max);
    GenusRatioReport report;
    report.all_ok = true;
    const BigRat quarter(1, 4);
    for (std::int64_t n = 2; n <= n_max; ++n) {
        GenusRatioRow row;
        row.n = n;
        row.avg_genus = avg_genus_exact(n, signed_words, AverageMode::words).value;
        row.ratio = row.avg_genus / n;
        row.tail = tail_fraction(n, signed_words).value;
        row.ok = row.ratio >= quarter;
        if (!row.ok) {
            report.all_ok = false;
        }
        if (report.rows.empty() || row.ratio < report.min_ratio) {
            report.min_ratio = row.ratio;
            report.min_ratio_n = n;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace platgenus
