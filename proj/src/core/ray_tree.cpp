#include "assemblyline/ray_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "assemblyline/error.hpp"
#include "assemblyline/orbit.hpp"

namespace assemblyline {

RayTree::RayTree(const DegreeSequence& seq, const std::vector<BoundaryPoint>& points) {
  std::vector<BoundaryPoint> distinct = points;
  std::sort(distinct.begin(), distinct.end(),
            [](const BoundaryPoint& a, const BoundaryPoint& b) { return a.letters() < b.letters(); });
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  rays_ = distinct.size();
  vertices_.push_back({});
  if (distinct.empty()) return;

  std::size_t max_len = 0;
  for (const auto& p : distinct) max_len = std::max(max_len, p.support_length());
  const std::size_t depth = max_len + 1;

  std::vector<std::vector<std::size_t>> paths;
  for (const auto& p : distinct) {
    std::vector<std::size_t> path{0};
    std::size_t v = 0;
    ++vertices_[0].rays;
    for (std::size_t d = 0; d < depth; ++d) {
      const std::uint32_t x = p.letter(d + 1);
      require(x < seq.degree(d + 1), ErrorCode::LevelMismatch, "letter outside its level alphabet");
      std::size_t next = vertices_.size();
      for (const auto c : vertices_[v].children) {
        if (vertices_[c].letter == x) next = c;
      }
      if (next == vertices_.size()) {
        vertices_.push_back({d + 1, x, v, 0, {}});
        auto& kids = vertices_[v].children;
        kids.insert(std::upper_bound(kids.begin(), kids.end(), next,
                                     [&](std::size_t a, std::size_t b) {
                                       return vertices_[a].letter < vertices_[b].letter;
                                     }),
                    next);
      }
      v = next;
      ++vertices_[v].rays;
      path.push_back(v);
    }
    paths.push_back(std::move(path));
  }

  in_pruned_.assign(vertices_.size(), false);
  for (const auto& path : paths) {
    for (std::size_t k = 0; k < path.size(); ++k) {
      in_pruned_[path[k]] = true;
      if (k >= 1 && vertices_[vertices_[path[k]].parent].children.size() == 1) break;
    }
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (in_pruned_[v]) pruned_.push_back(v);
  }
  for (const auto v : pruned_) {
    const bool internal = std::any_of(vertices_[v].children.begin(), vertices_[v].children.end(),
                                      [&](std::size_t c) { return in_pruned_[c]; });
    if (internal) minimal_full_size_ += seq.degree(vertices_[v].depth + 1);
  }
  minimal_full_size_ += 1;
}

bool RayTree::lone_child_property() const {
  for (const auto& v : vertices_) {
    if (v.children.size() != 1) continue;
    // The lone child may carry any letter; below it only the zero ray.
    std::size_t c = v.children.front();
    while (!vertices_[c].children.empty()) {
      if (vertices_[c].children.size() > 1) return false;
      c = vertices_[c].children.front();
      if (vertices_[c].letter != 0) return false;
    }
  }
  return true;
}

std::string RayTree::pruned_encoding() const {
  if (pruned_.empty()) return "";
  std::string out;
  auto emit = [&](auto&& self, std::size_t v) -> void {
    out.push_back('(');
    for (const auto c : vertices_[v].children) {
      if (!in_pruned_[c]) continue;
      out += std::to_string(vertices_[c].letter);
      self(self, c);
    }
    out.push_back(')');
  };
  emit(emit, 0);
  return out;
}

RayTree build_ray_tree(const DegreeSequence& seq, const std::vector<BoundaryPoint>& points) {
  return RayTree(seq, points);
}

std::vector<RayTreeCount> count_small_ray_trees(const DegreeSequence& seq, std::size_t r_max, std::size_t depth,
                                                std::uint64_t max_subsets) {
  require(r_max <= 4, ErrorCode::OutOfRange, "ray-tree enumeration is limited to r <= 4");
  require(depth >= 1 && depth <= 6, ErrorCode::OutOfRange, "ray-tree enumeration is limited to depth 1..6");

  std::vector<BoundaryPoint> universe{BoundaryPoint()};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<BoundaryPoint> grown;
    for (const auto& p : universe) {
      for (std::uint32_t x = 0; x < seq.degree(d + 1); ++x) {
        auto letters = p.letters();
        letters.resize(d + 1, 0);
        letters[d] = x;
        grown.emplace_back(std::move(letters));
      }
    }
    universe = std::move(grown);
  }
  const std::size_t n = universe.size();

  std::vector<RayTreeCount> table;
  for (std::size_t r = 0; r <= r_max; ++r) {
    RayTreeCount row;
    row.rays = r;
    row.bound = std::pow(seq.m_star() + 1.0, 6.0 * static_cast<double>(r));
    if (r > n) {
      table.push_back(row);
      continue;
    }
    double subsets = 1.0;
    for (std::size_t i = 0; i < r; ++i) subsets = subsets * static_cast<double>(n - i) / static_cast<double>(i + 1);
    require(subsets <= static_cast<double>(max_subsets), ErrorCode::OutOfRange, "too many subsets to enumerate");

    std::set<std::string> shapes;
    std::vector<std::size_t> pick(r);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<BoundaryPoint> chosen(r);
    while (true) {
      for (std::size_t i = 0; i < r; ++i) chosen[i] = universe[pick[i]];
      ++row.subsets_examined;
      const RayTree tree(seq, chosen);
      if (tree.lone_child_property()) {
        ++row.admissible;
        shapes.insert(tree.pruned_encoding());
      }
      // Next combination in lexicographic order.
      std::size_t i = r;
      while (i > 0 && pick[i - 1] == n - r + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    row.distinct_pruned = shapes.size();
    table.push_back(row);
  }
  return table;
}

RayTreeCensus exhaustive_ray_tree_census(const MotherGroup& group, std::size_t length, std::size_t depth) {
  const auto& seq = group.sequence();
  const std::uint32_t m1 = seq.degree(1);
  std::vector<Generator> alphabet;
  std::vector<double> weight;
  {
    std::vector<std::uint32_t> images(m1);
    std::iota(images.begin(), images.end(), 0u);
    std::size_t perms = 0;
    do {
      Generator g;
      g.kind = Generator::Kind::Root;
      g.perm = Permutation(images);
      alphabet.push_back(g);
      ++perms;
    } while (std::next_permutation(images.begin(), images.end()));
    for (std::size_t i = 0; i < perms; ++i) weight.push_back(0.5 / static_cast<double>(perms));
    const std::uint64_t order = group.propagating_order();
    for (std::uint64_t k = 0; k < order; ++k) {
      Generator g;
      g.kind = Generator::Kind::Propagating;
      g.power = k;
      alphabet.push_back(g);
      weight.push_back(0.5 / static_cast<double>(order));
    }
  }
  double words = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(length));
  require(words <= 2e6, ErrorCode::OutOfRange, "too many words to enumerate");

  RayTreeCensus census;
  std::map<std::string, std::pair<std::size_t, std::vector<Automorphism>>> by_tree;
  std::map<std::string, std::size_t> tree_rays;
  std::set<std::vector<std::vector<std::uint32_t>>> supports;
  std::vector<std::size_t> digits(length, 0);
  while (true) {
    WalkWord word;
    double p = 1.0;
    Automorphism y = group.identity();
    for (const auto d : digits) {
      word.steps.push_back(alphabet[d]);
      p *= weight[d];
      y = group.compose(y, group.element(alphabet[d]));
    }
    const auto points = inverted_orbit_reference(group, word);
    const RayTree tree(seq, points);
    ++census.words;
    census.lone_child_property = census.lone_child_property && tree.lone_child_property();
    census.pruned_bound = census.pruned_bound && tree.pruned_size() + 1 <= 3 * tree.ray_count();
    census.mean_orbit_size += p * static_cast<double>(tree.ray_count());
    std::vector<std::vector<std::uint32_t>> support;
    for (const auto& q : points) support.push_back(q.letters());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    supports.insert(std::move(support));

    auto& slot = by_tree[tree.pruned_encoding()];
    slot.first = tree.pruned_size();
    tree_rays[tree.pruned_encoding()] = tree.ray_count();
    const bool seen = std::any_of(slot.second.begin(), slot.second.end(),
                                  [&](const Automorphism& e) { return group.equivalent(e, y, depth); });
    if (!seen) slot.second.push_back(y);

    std::size_t i = 0;
    while (i < length && ++digits[i] == alphabet.size()) digits[i++] = 0;
    if (i == length) break;
  }
  census.distinct_supports = supports.size();

  double log_factorial = 0.0;
  for (std::uint32_t k = 2; k <= seq.m_star(); ++k) log_factorial += std::log(static_cast<double>(k));
  const double m = seq.m_star();
  for (const auto& [encoding, slot] : by_tree) {
    RayTreeCensusEntry e;
    e.encoding = encoding;
    e.rays = tree_rays[encoding];
    e.pruned_size = slot.first;
    e.elements = slot.second.size();
    e.log_element_bound = 3.0 * m * m * static_cast<double>(e.rays) * log_factorial;
    e.element_bound = std::exp(e.log_element_bound);
    census.trees.push_back(e);
    ++census.trees_per_rays[e.rays];
  }
  return census;
}

}  // namespace assemblyline
