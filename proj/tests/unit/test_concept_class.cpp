#include "helpers.hpp"

#include "sdl/class_json.hpp"
#include "sdl/class_ref.hpp"
#include "sdl/error.hpp"
#include "sdl/zoo.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace sdl;
using testing::cls;

TEST_CASE("from_rows validates the table") {
    CHECK_THROWS_AS(cls(2, 2, {{0, 2}}), ArgumentError);
    CHECK_THROWS_AS(cls(2, 2, {{0}}), ArgumentError);
    CHECK_THROWS_AS(cls(2, 2, {{0, 1}, {0, 1}}), ArgumentError);
    CHECK_THROWS_AS(cls(2, 1, {{0, 0}}), ArgumentError);
    auto d = ConceptClass::from_rows(2, 2, {{0, 1}, {1, 1}, {0, 1}}, DuplicateRows::dedupe);
    CHECK(d.num_concepts() == 2);
    CHECK(d.at(1, 0) == 1);
    auto empty = cls(3, 2, {});
    CHECK(empty.empty());
}

TEST_CASE("restrict") {
    auto th = zoo::thresholds(4);
    auto full = VersionSpace::full(th);
    // rows 0000, 1000, 1100, 1110, 1111
    auto r = restrict(th, full, {0, 0});
    CHECK(r.members() == std::vector<ConceptId>{0});
    CHECK(r.is_subset_of(full));

    auto two = VersionSpace::of(th, std::vector<ConceptId>{2, 3});
    CHECK(restrict(th, two, {0, 1}) == two);
    CHECK(restrict(th, two, {0, 0}).empty());
    CHECK_THROWS_AS(restrict(th, full, {4, 0}), ArgumentError);
    CHECK_THROWS_AS(restrict(th, full, {0, 2}), ArgumentError);
}

TEST_CASE("realizable_labels") {
    auto s = zoo::singletons(5);
    auto full = VersionSpace::full(s);
    for (PointId x = 0; x < 5; ++x) CHECK(realizable_labels(s, full, x) == std::vector<LabelId>{0, 1});
    auto one = VersionSpace::of(s, std::vector<ConceptId>{3});
    CHECK(realizable_labels(s, one, 3) == std::vector<LabelId>{1});
    CHECK(realizable_labels(s, one, 0) == std::vector<LabelId>{0});
    CHECK_THROWS_AS(realizable_labels(s, VersionSpace(s.num_concepts()), 0), StateError);

    auto tern = cls(1, 3, {{0}, {1}, {2}});
    CHECK(realizable_labels(tern, VersionSpace::full(tern), 0).size() == 3);
}

TEST_CASE("forced_point_reduction") {
    auto th = zoo::thresholds(4);
    auto all = ActiveSet::full(th);
    auto two = VersionSpace::of(th, std::vector<ConceptId>{2, 3});  // 1100, 1110
    CHECK(forced_point_reduction(th, two, all).members() == std::vector<PointId>{2});
    CHECK(forced_point_reduction(th, VersionSpace::of(th, std::vector<ConceptId>{1}), all).empty());
    auto c = testing::cube(3);
    CHECK(forced_point_reduction(c, VersionSpace::full(c), ActiveSet::full(c)) == ActiveSet::full(c));
}

TEST_CASE("canonical_key") {
    auto th = zoo::thresholds(4);
    auto two = VersionSpace::of(th, std::vector<ConceptId>{2, 3});
    auto all = ActiveSet::full(th);
    CHECK(canonical_key(th, two, all) == canonical_key(th, two, forced_point_reduction(th, two, all)));

    // A duplicated column carries no information once its twin is labelled.
    auto a = cls(3, 2, {{0, 0, 1}, {1, 1, 0}, {1, 1, 1}});
    auto b = cls(2, 2, {{0, 1}, {1, 0}, {1, 1}});
    CHECK(canonical_key(a, VersionSpace::full(a), ActiveSet::full(a)) ==
          canonical_key(b, VersionSpace::full(b), ActiveSet::full(b)));

    // Row and column permutations.
    auto p = cls(3, 2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto q = cls(3, 2, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    CHECK(canonical_key(p, VersionSpace::full(p), ActiveSet::full(p)) ==
          canonical_key(q, VersionSpace::full(q), ActiveSet::full(q)));

    // Random distinct value-relevant states: collisions are rare.
    std::size_t collisions = 0, pairs = 0;
    for (std::uint64_t s = 0; s < 60; ++s) {
        auto x = zoo::random_class(6, 5, 2, s);
        auto y = zoo::random_class(6, 5, 2, s + 1000);
        ++pairs;
        collisions += canonical_key(x, VersionSpace::full(x), ActiveSet::full(x)) ==
                      canonical_key(y, VersionSpace::full(y), ActiveSet::full(y));
    }
    CHECK(collisions * 10 < pairs);
}

TEST_CASE("class JSON round trip and diagnostics") {
    auto c = zoo::grid_rectangles(2, 3);
    auto back = class_from_json(class_to_json(c));
    CHECK(back == c);
    auto named = ConceptClass::from_rows(2, 3, {{0, 2}, {1, 1}}, DuplicateRows::reject, {"a", "b"}, {"r", "g", "b"});
    CHECK(class_from_json(class_to_json(named)) == named);

    CHECK_THROWS_AS(class_from_json("not json"), ArgumentError);
    CHECK_THROWS_AS(class_from_json("[]"), ArgumentError);
    CHECK_THROWS_AS(class_from_json(R"({"num_points":2,"num_labels":2})"), ArgumentError);
    CHECK_THROWS_AS(class_from_json(R"({"num_points":2,"num_labels":2,"table":[[0,1],[0,1]]})"), ArgumentError);
    CHECK(class_from_json(R"({"num_points":2,"num_labels":2,"table":[[0,1],[0,1]]})", DuplicateRows::dedupe)
              .num_concepts() == 1);
    CHECK_THROWS_AS(class_from_json(R"({"num_points":2,"num_labels":2,"table":[[0,5]]})"), ArgumentError);

    auto path = std::filesystem::temp_directory_path() / "sdl_unit_class.json";
    save_class(c, path);
    CHECK(load_class(path) == c);
    CHECK(resolve_class(path.string()) == c);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_class("/nonexistent/x.json"), ArgumentError);
}

TEST_CASE("zoo URIs") {
    CHECK(resolve_class("zoo:bendavid:3:1") == zoo::bendavid(3, 1));
    CHECK(resolve_class("zoo:k_intervals:2:8") == zoo::k_intervals(2, 8));
    CHECK(resolve_class("zoo:rectangles:2:3") == zoo::grid_rectangles(2, 3));
    CHECK(resolve_class("zoo:octagon").num_concepts() == 58);
    CHECK(resolve_class("zoo:random:5:4:2:9") == zoo::random_class(5, 4, 2, 9));
    CHECK_THROWS_AS(resolve_class("zoo:nope:1"), ArgumentError);
    CHECK_THROWS_AS(resolve_class("zoo:thresholds:x"), ArgumentError);
    CHECK_THROWS_AS(resolve_class("zoo:thresholds"), ArgumentError);
    CHECK_THROWS_AS(resolve_class("zoo:singletons:1"), ArgumentError);
    CHECK(!zoo_uris().empty());
}
