#pragma once

// Ray trees of finite point sets. Each point is read as a ray from the root
// (w_1, w_2, ...) continued by zeros; the ray tree is the prefix closure.
// The pruned tree keeps each ray up to and including its first lone child
// (a vertex that is the only child of its parent). The minimal full tree adds
// every child of every internal vertex of the pruned tree.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "assemblyline/automaton.hpp"

namespace assemblyline {

class RayTree {
 public:
  struct Vertex {
    std::size_t depth = 0;
    std::uint32_t letter = 0;  // letter on the edge from the parent
    std::size_t parent = 0;
    std::size_t rays = 0;      // number of points through this vertex
    std::vector<std::size_t> children;  // sorted by letter
  };

  RayTree(const DegreeSequence& seq, const std::vector<BoundaryPoint>& points);

  std::size_t ray_count() const noexcept { return rays_; }
  std::size_t full_size() const noexcept { return vertices_.size(); }
  std::size_t pruned_size() const noexcept { return pruned_.size(); }
  std::size_t minimal_full_size() const noexcept { return minimal_full_size_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  // Vertex indices of the pruned tree, root first.
  const std::vector<std::size_t>& pruned() const noexcept { return pruned_; }

  // Whenever a vertex has exactly one child, everything below that child is
  // the zero ray.
  bool lone_child_property() const;

  // Canonical text form of the pruned tree; equal shapes give equal strings.
  std::string pruned_encoding() const;

 private:
  std::size_t rays_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<std::size_t> pruned_;
  std::vector<bool> in_pruned_;
  std::size_t minimal_full_size_ = 0;
};

RayTree build_ray_tree(const DegreeSequence& seq, const std::vector<BoundaryPoint>& points);

struct RayTreeCount {
  std::size_t rays = 0;
  std::uint64_t subsets_examined = 0;
  std::uint64_t admissible = 0;       // subsets with the lone-child property
  std::uint64_t distinct_pruned = 0;  // distinct pruned shapes among them
  double bound = 0.0;                 // (m* + 1)^{6 r}
};

// For r = 0..r_max, enumerate r-subsets of the points supported in the first
// `depth` letters, keep those whose ray tree has the lone-child property and
// count distinct pruned trees. Limits: r_max <= 4, depth <= 6 and at most
// max_subsets subsets per r.
std::vector<RayTreeCount> count_small_ray_trees(const DegreeSequence& seq, std::size_t r_max, std::size_t depth,
                                                std::uint64_t max_subsets = 20'000'000);

// Every word of the given length over the support of the step distribution:
// for each pruned ray tree of an inverted orbit, the number of distinct
// elements Y_n (compared by action to `depth`) that produce it.
struct RayTreeCensusEntry {
  std::string encoding;
  std::size_t rays = 0;
  std::size_t pruned_size = 0;
  std::size_t elements = 0;
  double element_bound = 0.0;  // (m*!)^{3 m*^2 r}, as a log when huge (see log_element_bound)
  double log_element_bound = 0.0;
};

struct RayTreeCensus {
  std::size_t words = 0;
  std::vector<RayTreeCensusEntry> trees;
  // Distinct ray trees per ray count r, with the bound (m* + 1)^{6 r}.
  std::map<std::size_t, std::size_t> trees_per_rays;
  // Distinct supports of Q_n and the exact mean |Q_n| over the words, each
  // word weighted by its probability.
  std::size_t distinct_supports = 0;
  double mean_orbit_size = 0.0;
  bool lone_child_property = true;
  bool pruned_bound = true;  // i <= 3 r - 1 for every word
};

RayTreeCensus exhaustive_ray_tree_census(const MotherGroup& group, std::size_t length, std::size_t depth);

}  // namespace assemblyline
