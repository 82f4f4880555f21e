#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "assemblyline/gray_chain.hpp"
#include "assemblyline/orbit.hpp"
#include "assemblyline/ray_tree.hpp"

using namespace assemblyline;

TEST_CASE("hand-built ray trees") {
  const auto two = DegreeSequence::constant(2);
  const RayTree single(two, {BoundaryPoint()});
  CHECK(single.ray_count() == 1);
  CHECK(single.pruned_size() == 2);
  CHECK(single.lone_child_property());

  const RayTree pair(two, {BoundaryPoint(), BoundaryPoint({1})});
  CHECK(pair.ray_count() == 2);
  CHECK(pair.pruned_size() == 5);
  CHECK(pair.pruned_size() == 3 * pair.ray_count() - 1);
  // Internal pruned vertices are the root and both first-level vertices.
  CHECK(pair.minimal_full_size() == 7);
  CHECK(pair.lone_child_property());

  // Duplicates do not add rays.
  CHECK(RayTree(two, {BoundaryPoint({1}), BoundaryPoint({1, 0})}).ray_count() == 1);

  // A lone child with a branching subtree below it.
  const RayTree bad(two, {BoundaryPoint(), BoundaryPoint({0, 1})});
  CHECK_FALSE(bad.lone_child_property());
  // A lone child may carry a nonzero letter.
  CHECK(RayTree(two, {BoundaryPoint(), BoundaryPoint({1, 1})}).lone_child_property());
  CHECK_FALSE(RayTree(two, {BoundaryPoint({1, 1})}).lone_child_property());
}

TEST_CASE("equal shapes encode equally") {
  const auto two = DegreeSequence::constant(2);
  const RayTree a(two, {BoundaryPoint(), BoundaryPoint({1})});
  const RayTree b(two, {BoundaryPoint({1}), BoundaryPoint()});
  const RayTree c(two, {BoundaryPoint(), BoundaryPoint({1, 1})});
  CHECK(a.pruned_encoding() == b.pruned_encoding());
  CHECK(a.pruned_encoding() != c.pruned_encoding());
}

TEST_CASE("inverted orbits satisfy the structural lemmas") {
  for (const auto& seq : {DegreeSequence::constant(2), DegreeSequence::constant(3), DegreeSequence({2, 4, 3})}) {
    const MotherGroup group(seq);
    for (std::uint64_t s = 0; s < 60; ++s) {
      const auto points = inverted_orbit_incremental(group, sample_word(group, 1000, 31, s));
      const RayTree tree(seq, points);
      CHECK(tree.ray_count() == OccupationMeasure(points).support_size());
      CHECK(tree.pruned_size() + 1 <= 3 * tree.ray_count());
      CHECK(tree.lone_child_property());
      CHECK(tree.minimal_full_size() <= seq.m_star() * tree.pruned_size());
    }
  }
}

TEST_CASE("small ray tree counts") {
  const auto two = DegreeSequence::constant(2);
  const auto counts = count_small_ray_trees(two, 2, 3);
  REQUIRE(counts.size() == 3);
  CHECK(counts[0].distinct_pruned == 1);
  // One ray passes the lone-child test only if it is zero after w_1.
  CHECK(counts[1].admissible == 2);
  CHECK(counts[1].distinct_pruned == 2);
  CHECK(counts[1].distinct_pruned <= 729);
  const auto deeper = count_small_ray_trees(two, 2, 4);
  CHECK(deeper[2].distinct_pruned <= std::pow(3.0, 12));
  for (const auto& c : count_small_ray_trees(DegreeSequence::constant(3), 3, 3)) {
    CHECK(static_cast<double>(c.distinct_pruned) <= c.bound);
  }
}

TEST_CASE("exhaustive census") {
  const auto two = DegreeSequence::constant(2);
  const MotherGroup group(two);
  const auto tail = return_tail(two, 8);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto census = exhaustive_ray_tree_census(group, n, 6);
    CHECK(census.words == static_cast<std::size_t>(std::pow(4.0, n)));
    CHECK(census.lone_child_property);
    CHECK(census.pruned_bound);
    CHECK(census.mean_orbit_size == doctest::Approx(orbit_size_exact(tail, n)).epsilon(1e-12));
    for (const auto& e : census.trees) {
      CHECK(std::log(static_cast<double>(e.elements)) <= e.log_element_bound);
      CHECK(e.pruned_size + 1 <= 3 * e.rays);
    }
    for (const auto& [r, count] : census.trees_per_rays) CHECK(count <= std::pow(3.0, 6.0 * r));
  }
}
