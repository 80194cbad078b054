#include "helpers.hpp"
#include "oracles.hpp"

#include "sdl/dimensions.hpp"
#include "sdl/error.hpp"
#include "sdl/labelling_game.hpp"
#include "sdl/simulate.hpp"
#include "sdl/zoo.hpp"

#include <doctest.h>

#include <sstream>

using namespace sdl;

namespace {

ConceptClass capped_random(std::uint64_t seed, std::size_t L) {
    std::size_t n = 1 + seed % 4;
    std::size_t cap = 1;
    for (std::size_t i = 0; i < n; ++i) cap *= L;
    std::size_t m = 1 + (seed * 5) % std::min<std::size_t>(cap, L == 2 ? 10 : 16);
    return zoo::random_class(m, n, L, seed + 17 * L);
}

}  // namespace

TEST_CASE("labelling game: spot values") {
    CHECK(labelling_game_value(zoo::singletons(4), ActiveSet::full(zoo::singletons(4)), false) == 1);
    auto s = zoo::singletons(4);
    CHECK(labelling_game_value(s, ActiveSet(4), false) == 0);
    CHECK(labelling_game_value(zoo::thresholds(4), ActiveSet::full(zoo::thresholds(4)), false) == 1);
    CHECK_THROWS_AS(labelling_game_value(zoo::singletons(5), ActiveSet::full(zoo::singletons(5)), false),
                    ArgumentError);
    auto tern = testing::cls(2, 3, {{0, 1}, {2, 2}});
    CHECK_THROWS_AS(labelling_game_value(tern, ActiveSet::full(tern), false), ArgumentError);
}

TEST_CASE("labelling game value equals the self-directed value (binary)") {
    int mismatches = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto c = capped_random(seed, 2);
        auto all = ActiveSet::full(c);
        int game = labelling_game_value(c, all, false);
        oracle::Oracle o(c);
        int brute = o.sd_full();
        int eng = Engine().m_sd(c, VersionSpace::full(c), all);
        if (game != brute || game != eng) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("labelling game value equals the self-directed value (ternary)") {
    int mismatches = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto c = capped_random(seed, 3);
        auto all = ActiveSet::full(c);
        int game = labelling_game_value(c, all, true);
        if (game != oracle::Oracle(c).sd_full()) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("game session: learner wins singletons with one round") {
    auto s = zoo::singletons(4);
    std::istringstream in("x0=1\nquit\n");
    std::ostringstream out;
    auto rec = play_labelling_game(s, ActiveSet::full(s), false, GameSide::learner, in, out);
    REQUIRE(rec.payout.has_value());
    CHECK(*rec.payout == 1);
    CHECK(out.str().find("realizable") != std::string::npos);
}

TEST_CASE("game session: an unrealizable labelling pays -1") {
    auto th = zoo::thresholds(2);  // 00, 10, 11
    std::istringstream in("x0=0 x1=1\n");
    std::ostringstream out;
    auto rec = play_labelling_game(th, ActiveSet::full(th), false, GameSide::adversary, in, out);
    REQUIRE(rec.payout.has_value());
    CHECK(*rec.payout == -1);
}

TEST_CASE("game session: illegal moves are rejected and re-prompted") {
    auto s = zoo::singletons(4);
    std::istringstream in("x9=1\nx0=7\nbanana\nx0=1\n");
    std::ostringstream out;
    auto rec = play_labelling_game(s, ActiveSet::full(s), false, GameSide::learner, in, out);
    CHECK(rec.payout == 1);
}

TEST_CASE("game session: quit keeps the partial record") {
    auto th = zoo::thresholds(3);
    std::istringstream in("quit\n");
    std::ostringstream out;
    auto rec = play_labelling_game(th, ActiveSet::full(th), false, GameSide::learner, in, out);
    CHECK(rec.quit);
    CHECK(!rec.payout.has_value());
    CHECK(rec.to_json().find("\"quit\"") != std::string::npos);
}

TEST_CASE("game session: machine self-play pays the self-directed value") {
    int mismatches = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto c = capped_random(seed, 2);
        std::istringstream in;
        std::ostringstream out;
        auto rec = play_labelling_game(c, ActiveSet::full(c), false, GameSide::none, in, out);
        if (!rec.payout || *rec.payout != m_sd(c, VersionSpace::full(c), ActiveSet::full(c))) ++mismatches;
    }
    CHECK(mismatches == 0);
}
