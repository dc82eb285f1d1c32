#include <doctest.h>

#include "platgenus/cobordism.hpp"
#include "platgenus/rng.hpp"
#include "platgenus/trace_io.hpp"

using namespace platgenus;

namespace {

TwistWord random_word(Rng& rng, std::int64_t max_pairs, int max_abs) {
    const std::int64_t m =
        1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(max_pairs)));
    std::vector<int> e;
    for (std::int64_t i = 0; i < 2 * m; ++i) {
        int v = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_abs)));
        if (uniform_below(rng, 2) == 0) {
            v = -v;
        }
        e.push_back(v);
    }
    return TwistWord(std::move(e));
}

} // namespace

TEST_CASE("trace text round-trips bit-exactly and replays") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const TwistWord w = random_word(rng, 12, 7);
        const BoundParams p{1 + static_cast<std::int64_t>(uniform_below(rng, 6)),
                            1 + static_cast<std::int64_t>(uniform_below(rng, 3))};
        const CobordismTrace trace = g4_upper_bound(w, p).trace;

        const std::string text = trace_to_text(trace);
        const CobordismTrace parsed = trace_from_text(text);
        CHECK(parsed == trace);
        CHECK(trace_to_text(parsed) == text);
        CHECK(replay(parsed).ok);

        const std::string json = trace_to_json(trace);
        const CobordismTrace from_json = trace_from_json(json);
        CHECK(from_json == trace);
        CHECK(trace_to_json(from_json) == json);
    }
}

TEST_CASE("text format is stable for a known trace") {
    const CobordismTrace trace =
        g4_upper_bound(TwistWord::parse("1,1,1,1,-1,-1,1,1,1,1"), {2, 1}).trace;
    const std::string text = trace_to_text(trace);
    CHECK(text == "platgenus-trace v1\n"
                  "word 1,1,1,1,-1,-1,1,1,1,1\n"
                  "k 2\n"
                  "s 1\n"
                  "n 10\n"
                  "m 5\n"
                  "total 3\n"
                  "bound 3\n"
                  "steps 4\n"
                  "split 2 1\n"
                  "split 4 1\n"
                  "cancel -1,-1 -1,-1 0\n"
                  "residual -1,-1 1\n"
                  "final -1,-1 ; -1,-1\n"
                  "end\n");
}

TEST_CASE("parser rejects malformed traces") {
    const CobordismTrace trace = g4_upper_bound(TwistWord::parse("1,1"), {1, 1}).trace;
    const std::string good = trace_to_text(trace);

    CHECK_THROWS_AS(trace_from_text(""), std::invalid_argument);
    CHECK_THROWS_AS(trace_from_text("garbage\n"), std::invalid_argument);

    std::string bad = good;
    bad.replace(bad.find("word 1,1"), 8, "word 1,0");
    CHECK_THROWS_AS(trace_from_text(bad), std::invalid_argument);

    bad = good;
    bad.replace(bad.find("n 2"), 3, "n 3"); // header inconsistent with word
    CHECK_THROWS_AS(trace_from_text(bad), std::invalid_argument);

    bad = good;
    bad.erase(bad.find("end"));
    CHECK_THROWS_AS(trace_from_text(bad), std::invalid_argument);
}

TEST_CASE("empty-final trace serializes and verifies") {
    const CobordismTrace trace = g4_upper_bound(TwistWord::parse("5,5"), {2, 1}).trace;
    CHECK(trace.final_sum.empty());
    const CobordismTrace parsed = trace_from_text(trace_to_text(trace));
    CHECK(parsed == trace);
    CHECK(replay(parsed).ok);
}
