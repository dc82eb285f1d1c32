#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "platgenus/partition_stats.hpp"

using namespace platgenus;

namespace {

// Independent oracle: recursive enumeration of signed even compositions.
void brute_words(std::int64_t n, std::vector<std::vector<int>>& out) {
    std::vector<int> current;
    // extend `current` by positive parts summing to `left`, then sign-expand
    auto expand_signs = [&out](const std::vector<int>& parts) {
        const std::size_t j = parts.size();
        for (std::uint64_t bits = 0; bits < (1ULL << j); ++bits) {
            std::vector<int> w(parts);
            for (std::size_t i = 0; i < j; ++i) {
                if ((bits >> i) & 1ULL) {
                    w[i] = -w[i];
                }
            }
            out.push_back(std::move(w));
        }
    };
    std::function<void(std::int64_t)> rec = [&](std::int64_t left) {
        if (left == 0) {
            if (!current.empty() && current.size() % 2 == 0) {
                expand_signs(current);
            }
            return;
        }
        for (std::int64_t part = 1; part <= left; ++part) {
            current.push_back(static_cast<int>(part));
            rec(left - part);
            current.pop_back();
        }
    };
    rec(n);
}

// Independent Pascal triangle.
BigInt binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) {
        return 0;
    }
    std::vector<BigInt> row(static_cast<std::size_t>(n + 1), 0);
    row[0] = 1;
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t j = i; j >= 1; --j) {
            row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
        }
    }
    return row[static_cast<std::size_t>(k)];
}

} // namespace

TEST_CASE("word counts: frozen examples") {
    CHECK(count_words(2, true) == 4);
    CHECK(count_words(4, true) == 28);
    CHECK(count_words(4, false) == 4);
    CHECK_THROWS_AS(count_words(1, true), std::invalid_argument);
}

TEST_CASE("census matches the brute-force oracle") {
    for (std::int64_t n = 2; n <= 10; ++n) {
        std::vector<std::vector<int>> words;
        brute_words(n, words);
        const CompositionCensus census = CompositionCensus::build(n, true);
        CHECK(census.total() == BigInt(words.size()));

        std::map<std::int64_t, std::int64_t> histogram;
        for (const auto& w : words) {
            histogram[static_cast<std::int64_t>(w.size() / 2)] += 1;
        }
        for (std::int64_t m = 1; m <= census.max_m(); ++m) {
            CHECK(census.count_for(m) == BigInt(histogram[m]));
        }
    }
}

TEST_CASE("census entries are the expected binomials") {
    for (std::int64_t n : {2, 5, 9, 16, 33}) {
        const CompositionCensus unsigned_census = CompositionCensus::build(n, false);
        const CompositionCensus signed_census = CompositionCensus::build(n, true);
        BigInt four_power = 1;
        for (std::int64_t m = 1; m <= unsigned_census.max_m(); ++m) {
            four_power *= 4;
            const BigInt expected = binom(n - 1, 2 * m - 1);
            CHECK(unsigned_census.count_for(m) == expected);
            CHECK(signed_census.count_for(m) == expected * four_power);
            // binomial reflection on the stored values
            CHECK(binom(n - 1, 2 * m - 1) == binom(n - 1, n - 2 * m));
        }
    }
}

TEST_CASE("signed total has the closed form 3^(n-1) + (-1)^n") {
    for (std::int64_t n = 2; n <= 40; ++n) {
        CHECK(count_words(n, true) == signed_count_closed_form(n));
    }
}

TEST_CASE("enumeration yields each word exactly once") {
    SUBCASE("n=2 is the four unit words") {
        std::set<std::vector<int>> seen;
        enumerate_words(2, [&](const TwistWord& w) { CHECK(seen.insert(w.entries()).second); });
        const std::set<std::vector<int>> expected{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        CHECK(seen == expected);
    }
    SUBCASE("n=3 gives 8 words, all with one pair") {
        std::int64_t count = 0;
        enumerate_words(3, [&](const TwistWord& w) {
            ++count;
            CHECK(w.pair_count() == 1);
        });
        CHECK(count == 8);
    }
    SUBCASE("counts and histograms match the census up to n=12") {
        for (std::int64_t n = 2; n <= 12; ++n) {
            const CompositionCensus census = CompositionCensus::build(n, true);
            std::map<std::int64_t, std::int64_t> histogram;
            std::set<std::vector<int>> seen;
            std::int64_t count = 0;
            enumerate_words(n, [&](const TwistWord& w) {
                ++count;
                CHECK(w.complexity() == n);
                histogram[w.pair_count()] += 1;
                CHECK(seen.insert(w.entries()).second);
            });
            CHECK(BigInt(count) == census.total());
            for (std::int64_t m = 1; m <= census.max_m(); ++m) {
                CHECK(census.count_for(m) == BigInt(histogram[m]));
            }
        }
    }
    SUBCASE("cap refusal names the cap") {
        CHECK_THROWS_AS(enumerate_words(15, [](const TwistWord&) {}), CapExceeded);
        try {
            enumerate_words(20, [](const TwistWord&) {}, 14);
        } catch (const CapExceeded& e) {
            CHECK(e.n() == 20);
            CHECK(e.cap() == 14);
            CHECK(std::string(e.what()).find("14") != std::string::npos);
        }
    }
    SUBCASE("raising the cap cannot push enumeration past n = 40") {
        CHECK_THROWS_AS(enumerate_words(64, [](const TwistWord&) {}, 100),
                        std::invalid_argument);
    }
}

TEST_CASE("exact average genus: frozen examples") {
    CHECK(avg_genus_exact(4, false, AverageMode::words).value == BigRat(5, 4));
    CHECK(avg_genus_exact(4, true, AverageMode::words).value == BigRat(11, 7));
    CHECK(avg_genus_exact(2, true, AverageMode::words).value == 1);
}

TEST_CASE("unsigned average equals (n+1)/4 for n >= 3; n = 2 gives 1") {
    // the closed form starts holding at n = 3: at n = 2 the only even
    // composition is (1,1), so the average is exactly 1
    CHECK(avg_genus_exact(2, false, AverageMode::words).value == 1);
    for (std::int64_t n = 3; n <= 64; ++n) {
        CHECK(avg_genus_exact(n, false, AverageMode::words).value == BigRat(n + 1, 4));
    }
}

TEST_CASE("signed average ratio never drops below 1/4") {
    const GenusRatioReport report = genus_ratio_check(64);
    CHECK(report.all_ok);
    CHECK(report.rows.size() == 63);
    CHECK(report.rows[0].ratio == BigRat(1, 2));  // n=2
    CHECK(report.rows[2].ratio == BigRat(11, 28)); // n=4
    CHECK(report.min_ratio == BigRat(1, 3));
    CHECK(report.min_ratio_n == 3);
}

TEST_CASE("tail fractions") {
    CHECK(tail_fraction(8, true).value == BigRat(28, 2188));
    CHECK(tail_fraction(2, true).value == 0);
    CHECK(tail_fraction(16, true).value < tail_fraction(8, true).value);

    SUBCASE("threshold is compared inclusively") {
        // at n=8, threshold*n = 1, so m=1 words count
        CHECK(tail_fraction(8, BigRat(1, 8), true).value > 0);
    }
    SUBCASE("against the brute-force oracle") {
        for (std::int64_t n = 2; n <= 10; ++n) {
            std::vector<std::vector<int>> words;
            brute_words(n, words);
            std::int64_t below = 0;
            for (const auto& w : words) {
                if (BigRat(static_cast<std::int64_t>(w.size() / 2)) <= BigRat(n, 8)) {
                    ++below;
                }
            }
            CHECK(tail_fraction(n, true).value ==
                  BigRat(below, static_cast<std::int64_t>(words.size())));
        }
    }
}

TEST_CASE("knot-class census and knots-mode averages") {
    // frozen from exhaustive enumeration + symmetry dedup
    CHECK(class_census(2) == std::vector<std::int64_t>{3});
    CHECK(class_census(4) == std::vector<std::int64_t>{7, 10});
    CHECK(avg_genus_exact(2, true, AverageMode::knots).value == 1);
    CHECK(avg_genus_exact(4, true, AverageMode::knots).value == BigRat(27, 17));
    CHECK(avg_genus_exact(6, true, AverageMode::knots).value == BigRat(287, 131));

    SUBCASE("independent dedup oracle") {
        for (std::int64_t n = 2; n <= 8; ++n) {
            std::vector<std::vector<int>> words;
            brute_words(n, words);
            std::set<std::vector<int>> classes;
            for (const auto& w : words) {
                std::vector<int> nr(w.rbegin(), w.rend());
                for (int& v : nr) {
                    v = -v;
                }
                classes.insert(std::min(w, nr));
            }
            std::int64_t total = 0;
            for (std::int64_t c : class_census(n)) {
                total += c;
            }
            CHECK(total == static_cast<std::int64_t>(classes.size()));
        }
    }
    SUBCASE("knots mode respects the cap") {
        CHECK_THROWS_AS(avg_genus_exact(20, true, AverageMode::knots), CapExceeded);
    }
}
