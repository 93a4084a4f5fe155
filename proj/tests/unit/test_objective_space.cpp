#include <doctest.h>

#include <random>

#include "hrs/objective_space.hpp"
#include "support/test_util.hpp"

using namespace hrs;

TEST_CASE("dominance with and without tolerance") {
  CHECK(dominates({1, 2}, {2, 3}, 0.0));
  CHECK_FALSE(dominates({1, 2}, {1, 2}, 0.0));
  CHECK_FALSE(dominates({1, 3}, {3, 1}, 0.0));
  CHECK_FALSE(dominates({3, 1}, {1, 3}, 0.0));

  // within tolerance everything is "equal", so no strict edge
  CHECK_FALSE(dominates({1.0, 2.0}, {1.0 + 1e-9, 2.0 + 1e-9}, 1e-6));
  CHECK(dominates({1.0, 2.0}, {1.0, 2.0 + 1e-3}, 1e-6));
}

TEST_CASE("rect_area and translation invariance") {
  CHECK(rect_area({{0, 10}, {5, 2}}) == doctest::Approx(40.0));
  CHECK(rect_area({{3, 3}, {3, 3}}) == 0.0);
  // arithmetic cross-check: width x height computed independently
  const Rectangle big{{100, 11000}, {200, 0}};
  const double width = 200.0 - 100.0;
  const double height = 11000.0 - 0.0;
  CHECK(rect_area(big) == doctest::Approx(width * height));
  CHECK(rect_area(big) == doctest::Approx(1100000.0));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const Rectangle r{{u(rng), 60.0 + u(rng)}, {60.0 + u(rng), u(rng)}};
    const double dx = u(rng), dy = u(rng);
    const Rectangle moved{{r.upper_left.f1 + dx, r.upper_left.f2 + dy},
                          {r.lower_right.f1 + dx, r.lower_right.f2 + dy}};
    CHECK(rect_area(moved) == doctest::Approx(rect_area(r)).epsilon(1e-12));
  }
}

TEST_CASE("archive insertion examples") {
  ParetoArchive archive(0.0);
  CHECK(archive.insert({1, 3}, 0).accepted);

  SUBCASE("incomparable point is added") {
    const InsertOutcome out = archive.insert({2, 2}, 1);
    CHECK(out.accepted);
    CHECK(out.evicted.empty());
    REQUIRE(archive.size() == 2);
    CHECK(archive.entries()[0].point == ObjectivePoint{1, 3});
    CHECK(archive.entries()[1].point == ObjectivePoint{2, 2});
  }
  SUBCASE("dominating point evicts everything it dominates") {
    archive.insert({2, 2}, 1);
    const InsertOutcome out = archive.insert({1, 1}, 2);
    CHECK(out.accepted);
    CHECK(out.evicted.size() == 2);
    CHECK(archive.size() == 1);
    CHECK(archive.entries()[0].point == ObjectivePoint{1, 1});
  }
  SUBCASE("duplicate rejected, archive unchanged") {
    const InsertOutcome out = archive.insert({1, 3}, 9);
    CHECK_FALSE(out.accepted);
    CHECK(archive.size() == 1);
    CHECK(archive.entries()[0].solution_id == 0);  // first-found keeps its id
  }
  SUBCASE("rejected insert is idempotent") {
    archive.insert({2, 2}, 1);
    for (int k = 0; k < 3; ++k) {
      CHECK_FALSE(archive.insert({2.5, 2.5}, 7).accepted);
      CHECK(archive.size() == 2);
    }
  }
}

TEST_CASE("archive equals brute-force non-dominated filter on random streams") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 30; ++trial) {
    ParetoArchive archive(0.0);
    std::vector<ObjectivePoint> stream;
    for (int i = 0; i < 120; ++i) {
      const ObjectivePoint p{u(rng), u(rng)};
      stream.push_back(p);
      archive.insert(p, static_cast<std::size_t>(i));
    }
    const auto expected = hrs::test::brute_force_front(stream, 0.0);
    REQUIRE(archive.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(archive.entries()[i].point == expected[i]);
    }
    // pairwise mutual non-dominance
    for (std::size_t i = 0; i < archive.size(); ++i) {
      for (std::size_t j = 0; j < archive.size(); ++j) {
        if (i != j)
          CHECK_FALSE(dominates(archive.entries()[i].point, archive.entries()[j].point, 0.0));
      }
    }
  }
}

TEST_CASE("select_largest picks maximal area with deterministic ties") {
  RectangleSet set;
  CHECK(set.select_largest() == std::nullopt);

  REQUIRE(set.add({{0, 3}, {2, 0}}));   // area 6
  REQUIRE(set.add({{4, 2}, {6, 0}}));   // area 4
  auto sel = set.select_largest();
  REQUIRE(sel.has_value());
  CHECK(rect_area(set.rects()[*sel]) == doctest::Approx(6.0));

  RectangleSet tie;
  REQUIRE(tie.add({{2, 3}, {4, 0}}));  // area 6, upper_left.f1 = 2
  REQUIRE(tie.add({{1, 3}, {3, 0}}));  // area 6, upper_left.f1 = 1
  sel = tie.select_largest();
  REQUIRE(sel.has_value());
  CHECK(tie.rects()[*sel].upper_left.f1 == 1.0);

  // repeated calls return the same rectangle
  for (int k = 0; k < 5; ++k) CHECK(tie.select_largest() == sel);
}

TEST_CASE("zero-area rectangles are dropped on insertion") {
  RectangleSet set;
  CHECK_FALSE(set.add({{3, 3}, {3, 3}}));
  CHECK_FALSE(set.add({{1, 5}, {4, 5}}));  // zero height
  CHECK_FALSE(set.add({{2, 5}, {2, 1}}));  // zero width
  CHECK(set.empty());
}

TEST_CASE("prune_dominated_rects removes exactly the dominated upper-lefts") {
  SUBCASE("dominated upper-left goes away") {
    RectangleSet set;
    set.add({{5, 5}, {9, 1}});
    prune_dominated_rects(set, {4, 4}, 0.0);
    CHECK(set.empty());
  }
  SUBCASE("non-dominating point leaves the set alone") {
    RectangleSet set;
    set.add({{5, 5}, {9, 1}});
    prune_dominated_rects(set, {6, 6}, 0.0);
    CHECK(set.size() == 1);
  }
  SUBCASE("mixed set: per-rectangle dominance check") {
    RectangleSet set;
    set.add({{5, 5}, {9, 1}});
    set.add({{1, 9}, {4, 6}});
    const ObjectivePoint x{4, 4};
    // oracle: per-rect dominance decided independently
    const bool first_dominated = dominates(x, {5, 5}, 0.0);
    const bool second_dominated = dominates(x, {1, 9}, 0.0);
    CHECK(first_dominated);
    CHECK_FALSE(second_dominated);
    prune_dominated_rects(set, x, 0.0);
    REQUIRE(set.size() == 1);
    CHECK(set.rects()[0].upper_left == ObjectivePoint{1, 9});
  }
}
