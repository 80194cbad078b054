#include "helpers.hpp"
#include "oracles.hpp"

#include "sdl/dimensions.hpp"
#include "sdl/error.hpp"
#include "sdl/zoo.hpp"

#include <doctest.h>

#include <random>

using namespace sdl;

namespace {

// Small random classes: binary and ternary, up to 5 points.
ConceptClass small_random(std::uint64_t seed) {
    std::size_t n = 1 + seed % 5, L = 2 + (seed / 5) % 2;
    std::size_t cap = 1;
    for (std::size_t i = 0; i < n; ++i) cap *= L;
    std::size_t m = 1 + (seed * 7) % std::min<std::size_t>(cap, 12);
    return zoo::random_class(m, n, L, seed);
}

}  // namespace

TEST_CASE("fixed-S self-directed value: spot values") {
    CHECK(m_sd(zoo::singletons(5)) == 1);
    CHECK(m_sd(zoo::k_intervals(2, 8)) == 4);
    CHECK(m_sd(zoo::bendavid(3, 1)) == 4);
    auto s = zoo::singletons(5);
    CHECK(m_sd(s, VersionSpace::full(s), ActiveSet(s.num_points())) == 0);
    CHECK(m_sd(s, VersionSpace(s.num_concepts()), ActiveSet::full(s)) == -1);
    CHECK(m_sd(testing::cls(3, 2, {})) == -1);
}

TEST_CASE("class value maximizes over subsets") {
    // 3x3 rectangles: the full grid gives 2, the four edge midpoints give 4.
    auto r = zoo::grid_rectangles(2, 3);
    Engine e;
    CHECK(e.m_sd(r, VersionSpace::full(r), ActiveSet::full(r)) == 2);
    auto best = e.m_sd_max(r, VersionSpace::full(r), ActiveSet::full(r));
    CHECK(best.value == 4);
    CHECK(e.m_sd(r, VersionSpace::full(r), ActiveSet::of(r, best.points)) == 4);
    CHECK(e.m_sd(r) == 4);
}

TEST_CASE("engine agrees with the brute-force recursions") {
    EngineOptions plain;
    plain.pruning = false;
    plain.decompose = false;
    EngineOptions threaded;
    threaded.workers = 3;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto c = small_random(seed);
        CAPTURE(seed);
        oracle::Oracle o(c);
        auto vs = VersionSpace::full(c);
        auto all = ActiveSet::full(c);
        Engine e, p(plain), t(threaded);
        int full = o.sd_full();
        CHECK(e.m_sd(c, vs, all) == full);
        CHECK(p.m_sd(c, vs, all) == full);
        CHECK(t.m_sd(c, vs, all) == full);
        int mx = o.sd_max();
        CHECK(e.m_sd(c) == mx);
        CHECK(p.m_sd(c) == mx);
        CHECK(e.online_bound(c) == o.online_full());
        CHECK(p.online_bound(c) == o.online_full());
        CHECK(e.m_worst(c) == o.worst_full());
        CHECK(e.m_best(c) == o.best_max());
        if (c.is_binary()) CHECK(vc_dim(c) == o.vc());
        CHECK(teaching_dim(c) == o.td());
    }
}

TEST_CASE("engine agrees with brute force on restricted states") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto c = zoo::random_class(8, 5, 2, seed);
        oracle::Oracle o(c);
        std::mt19937_64 rng(seed);
        std::uint32_t mask = std::uint32_t(rng() % 32);
        std::vector<PointId> pts;
        for (PointId x = 0; x < 5; ++x)
            if (mask >> x & 1) pts.push_back(x);
        std::vector<ConceptId> members;
        for (ConceptId k = 0; k < 8; ++k)
            if (rng() % 3) members.push_back(k);
        CAPTURE(seed);
        Engine e;
        CHECK(e.m_sd(c, VersionSpace::of(c, members), ActiveSet::of(c, pts)) ==
              o.sd(oracle::Concepts(members.begin(), members.end()), mask));
        CHECK(e.online_bound(c, VersionSpace::of(c, members), ActiveSet::of(c, pts)) ==
              o.online(oracle::Concepts(members.begin(), members.end()), mask));
    }
}

TEST_CASE("online bound") {
    CHECK(online_bound(testing::cls(3, 2, {{0, 1, 1}})) == 0);
    CHECK(online_bound(testing::cube(3)) == 3);
    CHECK(online_bound(zoo::thresholds(7)) == 3);
    CHECK(online_bound(zoo::thresholds(4)) == 2);
}

TEST_CASE("fixed-order bound") {
    auto th = zoo::thresholds(4);
    std::vector<PointId> sorted{0, 1, 2, 3}, tree{2, 1, 3, 0}, bad{0, 0, 1, 2};
    CHECK(fixed_order_bound(th, sorted) == 1);
    CHECK(fixed_order_bound(th, tree) == 2);
    CHECK(fixed_order_bound(testing::cls(2, 2, {{1, 0}}), std::vector<PointId>{1, 0}) == 0);
    CHECK_THROWS_AS(fixed_order_bound(th, bad), ArgumentError);
    oracle::Oracle o(th);
    CHECK(o.fixed_order(o.table().all(), {2, 1, 3, 0}) == 2);
}

TEST_CASE("best and worst orderings") {
    auto th = zoo::thresholds(4);
    CHECK(m_best(th) == 1);
    CHECK(m_worst(th) == 2);
    oracle::Oracle o(th);
    CHECK(o.best_max() == 1);
    CHECK(o.worst_full() == 2);
}

TEST_CASE("VC dimension") {
    CHECK(vc_dim(testing::cls(3, 2, {})) == -1);
    CHECK(vc_dim(zoo::grid_rectangles(2, 3)) == 4);
    CHECK(vc_dim(zoo::bendavid(3, 1)) == 3);
    CHECK(vc_dim(testing::cls(2, 2, {{0, 1}})) == 0);
    CHECK_THROWS_AS(vc_dim(testing::cls(1, 3, {{0}, {2}})), UnsupportedError);
    auto sh = shattered_set(zoo::grid_rectangles(2, 3));
    CHECK(sh.size() == 4);
    oracle::Oracle o(zoo::grid_rectangles(2, 3));
    std::uint32_t mask = 0;
    for (auto x : sh) mask |= 1u << x;
    CHECK(o.shattered(mask));
}

TEST_CASE("teaching dimension") {
    CHECK(teaching_dim(zoo::bendavid(3, 1)) == 4);
    CHECK(teaching_dim(zoo::singletons(5)) == 1);
    CHECK(teaching_dim(testing::cls(3, 2, {{0, 1, 0}})) == 0);
    auto s = zoo::singletons(5);
    CHECK(teaching_set(s, 2) == std::vector<PointId>{2});
}

TEST_CASE("budget errors carry proven bounds") {
    SearchBudget tiny;
    tiny.max_states = 5;
    auto c = zoo::k_intervals(2, 8);
    try {
        Engine(EngineOptions{}, tiny).m_sd(c, VersionSpace::full(c), ActiveSet::full(c));
        FAIL("expected a budget error");
    } catch (const BudgetExceeded& e) {
        CHECK(e.lower() <= 4);
        CHECK(e.upper() >= 4);
        CHECK(e.lower() <= e.upper());
    }
    SearchBudget bad;
    bad.max_states = 0;
    CHECK_THROWS_AS(m_sd(c, bad), ArgumentError);
}

TEST_CASE("full report") {
    auto rep = full_report(zoo::singletons(5), all_measures());
    for (auto m : {Measure::vc, Measure::m_sd, Measure::m_best, Measure::m_worst, Measure::ld, Measure::td})
        CHECK(rep.value(m) == 1);
    CHECK(rep.complete());
    CHECK(rep.chain_holds());

    auto rect = full_report(zoo::grid_rectangles(2, 3), std::vector<Measure>{Measure::vc, Measure::m_sd});
    CHECK(rect.value(Measure::vc) == 4);
    CHECK(rect.value(Measure::m_sd) == 4);

    auto empty = full_report(testing::cls(2, 2, {}), all_measures());
    for (auto m : all_measures()) CHECK(empty.value(m) == -1);

    auto tern = full_report(testing::cls(2, 3, {{0, 1}, {2, 2}, {1, 0}}), all_measures());
    CHECK(tern.results.at(Measure::vc).status == MeasureResult::Status::unsupported);
    CHECK(tern.chain_holds());

    SearchBudget tiny;
    tiny.max_states = 3;
    auto partial = full_report(zoo::k_intervals(2, 8), std::vector<Measure>{Measure::m_sd}, tiny);
    CHECK(partial.results.at(Measure::m_sd).status == MeasureResult::Status::budget);
    CHECK(!partial.complete());

    // Serialized form is stable and parseable.
    auto j = report_json(rep, false);
    CHECK(j == report_json(full_report(zoo::singletons(5), all_measures()), false));
    CHECK(j.find("\"chain_holds\": true") != std::string::npos);
    auto csv = report_csv(rep, false);
    CHECK(csv.rfind("class_id,measure,value,states_explored,millis,status,lower,upper", 0) == 0);
    CHECK_THROWS_AS(parse_measure("nope"), ArgumentError);
    CHECK(parse_measure("online") == Measure::ld);
}
