#include "assemblyline/orbit.hpp"

#include <numeric>

namespace assemblyline {

WalkWord sample_word(const MotherGroup& group, std::size_t length, std::uint64_t seed, std::uint64_t stream) {
  WalkWord word;
  word.seed = seed;
  word.stream = stream;
  word.steps.reserve(length);
  RandomStream rng(seed, stream);
  for (std::size_t t = 0; t < length; ++t) word.steps.push_back(group.sample_step(rng));
  return word;
}

std::vector<BoundaryPoint> forward_orbit(const MotherGroup& group, const WalkWord& word) {
  std::vector<BoundaryPoint> points;
  points.reserve(word.steps.size() + 1);
  std::vector<std::uint32_t> letters;
  points.emplace_back();
  for (const auto& g : word.steps) {
    group.apply(g, letters);
    points.emplace_back(letters);
  }
  return points;
}

std::vector<BoundaryPoint> inverted_orbit_reference(const MotherGroup& group, const WalkWord& word) {
  std::vector<Generator> inverses;
  inverses.reserve(word.steps.size());
  for (const auto& g : word.steps) inverses.push_back(group.inverse(g));
  std::vector<BoundaryPoint> points;
  points.reserve(word.steps.size() + 1);
  points.emplace_back();
  std::vector<std::uint32_t> letters;
  for (std::size_t t = 1; t <= inverses.size(); ++t) {
    letters.clear();
    for (std::size_t i = t; i-- > 0;) group.apply(inverses[i], letters);
    points.emplace_back(letters);
  }
  return points;
}

std::vector<BoundaryPoint> inverted_orbit_incremental(const MotherGroup& group, const WalkWord& word) {
  std::vector<BoundaryPoint> points;
  points.reserve(word.steps.size() + 1);
  InvertedOrbitTracker tracker(group);
  points.push_back(tracker.current());
  for (const auto& g : word.steps) points.push_back(tracker.push(g));
  return points;
}

const BoundaryPoint& InvertedOrbitTracker::push(const Generator& g) {
  inverse_ = group_->compose(group_->element(group_->inverse(g)), inverse_);
  current_ = group_->act(inverse_, BoundaryPoint());
  return current_;
}

OccupationMeasure::OccupationMeasure(const std::vector<BoundaryPoint>& points) {
  for (const auto& p : points) add(p);
}

std::uint64_t OccupationMeasure::count(const BoundaryPoint& p) const {
  const auto it = counts_.find(p);
  return it == counts_.end() ? 0 : it->second;
}

AssemblyLine::AssemblyLine(DegreeSequence seq) : seq_(std::move(seq)), order_(seq_.cycle_order()) {}

void AssemblyLine::step(RandomStream& rng) {
  if (rng.coin()) {
    const std::uint32_t m = seq_.degree(1);
    scratch_.resize(m);
    std::iota(scratch_.begin(), scratch_.end(), 0u);
    for (std::uint32_t i = m - 1; i > 0; --i) {
      const auto j = static_cast<std::uint32_t>(rng.uniform_below(i + 1));
      std::swap(scratch_[i], scratch_[j]);
    }
    if (letters_.empty()) letters_.push_back(0);
    letters_[0] = scratch_[letters_[0]];
  } else {
    const std::uint64_t k = rng.uniform_below(order_);
    std::size_t i = 0;
    while (i < letters_.size() && letters_[i] == 0) ++i;
    if (i == letters_.size()) return;
    if (letters_.size() <= i + 1) letters_.resize(i + 2, 0);
    letters_[i + 1] = static_cast<std::uint32_t>((letters_[i + 1] + k) % seq_.degree(i + 2));
  }
  while (!letters_.empty() && letters_.back() == 0) letters_.pop_back();
}

}  // namespace assemblyline
