#pragma once

// Walk words, forward and inverted orbits of the root, occupation measures,
// and a direct simulator of the assembly line.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "assemblyline/automaton.hpp"
#include "assemblyline/random.hpp"

namespace assemblyline {

struct WalkWord {
  std::vector<Generator> steps;  // G_1 .. G_n
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

WalkWord sample_word(const MotherGroup& group, std::size_t length, std::uint64_t seed, std::uint64_t stream);

// o.Y_t for t = 0..n.
std::vector<BoundaryPoint> forward_orbit(const MotherGroup& group, const WalkWord& word);

// o.Y_t^{-1} = o.G_t^{-1} ... G_1^{-1} for t = 0..n, evaluating every prefix
// from scratch. Quadratic; the correctness oracle.
std::vector<BoundaryPoint> inverted_orbit_reference(const MotherGroup& group, const WalkWord& word);

// Same points from the portrait of Y_t^{-1} = G_t^{-1} Y_{t-1}^{-1}, kept as a
// persistent automorphism.
std::vector<BoundaryPoint> inverted_orbit_incremental(const MotherGroup& group, const WalkWord& word);

// Streaming form of the incremental engine.
class InvertedOrbitTracker {
 public:
  explicit InvertedOrbitTracker(const MotherGroup& group) : group_(&group) {}

  // Multiplies by the next step and returns o.Y_t^{-1}.
  const BoundaryPoint& push(const Generator& g);
  const BoundaryPoint& current() const noexcept { return current_; }
  const Automorphism& inverse_element() const noexcept { return inverse_; }

 private:
  const MotherGroup* group_;
  Automorphism inverse_;
  BoundaryPoint current_;
};

// Q_n(s) = number of t in 0..n with o.Y_t^{-1} = s.
class OccupationMeasure {
 public:
  OccupationMeasure() = default;
  explicit OccupationMeasure(const std::vector<BoundaryPoint>& points);

  void add(const BoundaryPoint& p) { ++counts_[p]; }
  std::uint64_t count(const BoundaryPoint& p) const;
  std::size_t support_size() const noexcept { return counts_.size(); }
  const std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash>& counts() const noexcept { return counts_; }

 private:
  std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash> counts_;
};

// The assembly line on letters, written without the group: heads replaces
// w_1 by its image under a uniform permutation, tails adds a uniform k to the
// letter after the first nonzero letter. It consumes the random stream in the
// same order as MotherGroup::sample_step, so both can be driven by one seed.
class AssemblyLine {
 public:
  explicit AssemblyLine(DegreeSequence seq);

  void step(RandomStream& rng);
  const std::vector<std::uint32_t>& letters() const noexcept { return letters_; }
  BoundaryPoint point() const { return BoundaryPoint(letters_); }
  bool at_root() const noexcept { return letters_.empty(); }
  void reset() { letters_.clear(); }

 private:
  DegreeSequence seq_;
  std::uint64_t order_;
  std::vector<std::uint32_t> letters_;
  std::vector<std::uint32_t> scratch_;
};

}  // namespace assemblyline
