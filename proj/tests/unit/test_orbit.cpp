#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "assemblyline/gray_chain.hpp"
#include "assemblyline/orbit.hpp"

using namespace assemblyline;

namespace {

// Inverse generators applied to letters, from their definitions: an inverse
// root permutation moves w_1 back, a^{-k} subtracts k after the first
// nonzero letter.
void oracle_apply_inverse(const DegreeSequence& seq, const Generator& g, std::vector<std::uint32_t>& w) {
  if (g.kind == Generator::Kind::Root) {
    if (w.empty()) w.push_back(0);
    w[0] = g.perm.inverse()(w[0]);
  } else {
    std::size_t j = 0;
    while (j < w.size() && w[j] == 0) ++j;
    if (j == w.size()) return;
    if (w.size() == j + 1) w.push_back(0);
    const std::uint64_t m = seq.degree(j + 2);
    w[j + 1] = static_cast<std::uint32_t>((w[j + 1] + m - g.power % m) % m);
  }
  while (!w.empty() && w.back() == 0) w.pop_back();
}

std::vector<BoundaryPoint> oracle_inverted_orbit(const DegreeSequence& seq, const WalkWord& word) {
  std::vector<BoundaryPoint> out = {BoundaryPoint()};
  for (std::size_t t = 1; t <= word.steps.size(); ++t) {
    std::vector<std::uint32_t> w;
    for (std::size_t s = t; s-- > 0;) oracle_apply_inverse(seq, word.steps[s], w);
    out.emplace_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("small words") {
  const auto seq = DegreeSequence::constant(2);
  const MotherGroup group(seq);
  WalkWord id;
  id.steps.assign(5, Generator{Generator::Kind::Root, Permutation::identity(2), 0});
  for (const auto& p : forward_orbit(group, id)) CHECK(p.is_root());

  WalkWord swap;
  swap.steps = {Generator{Generator::Kind::Root, Permutation({1, 0}), 0}};
  const auto f = forward_orbit(group, swap);
  REQUIRE(f.size() == 2);
  CHECK(f[1] == BoundaryPoint({1}));
  const auto inv = inverted_orbit_incremental(group, swap);
  CHECK(inv[1] == BoundaryPoint({1}));
  CHECK(OccupationMeasure(inv).support_size() == 2);

  WalkWord prop;
  prop.steps = {Generator{Generator::Kind::Propagating, {}, 1}};
  const auto q = OccupationMeasure(inverted_orbit_reference(group, prop));
  CHECK(q.count(BoundaryPoint()) == 2);
  CHECK(q.support_size() == 1);
}

TEST_CASE("words are reproducible") {
  const MotherGroup group(DegreeSequence::constant(3));
  const auto a = sample_word(group, 100, 5, 1);
  const auto b = sample_word(group, 100, 5, 1);
  const auto c = sample_word(group, 100, 5, 2);
  CHECK(a.steps == b.steps);
  CHECK(a.steps != c.steps);
}

TEST_CASE("forward orbit is the assembly line") {
  for (const auto& seq : {DegreeSequence::constant(2), DegreeSequence({3, 2, 4})}) {
    const MotherGroup group(seq);
    const auto word = sample_word(group, 10000, 77, 3);
    const auto orbit = forward_orbit(group, word);
    RandomStream rng(77, 3);
    AssemblyLine line(seq);
    bool same = true;
    for (std::size_t t = 1; t <= 10000; ++t) {
      line.step(rng);
      same = same && line.point() == orbit[t];
    }
    CHECK(same);
  }
}

TEST_CASE("inverted orbit engines agree with the letter oracle") {
  for (const auto& seq : {DegreeSequence::constant(2), DegreeSequence::constant(4), DegreeSequence({3, 2, 4, 2, 3})}) {
    const MotherGroup group(seq);
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
      const auto word = sample_word(group, 150, 123, stream);
      const auto oracle = oracle_inverted_orbit(seq, word);
      CHECK(inverted_orbit_reference(group, word) == oracle);
      CHECK(inverted_orbit_incremental(group, word) == oracle);
      InvertedOrbitTracker tracker(group);
      bool same = tracker.current() == oracle[0];
      for (std::size_t t = 0; t < word.steps.size(); ++t) same = same && tracker.push(word.steps[t]) == oracle[t + 1];
      CHECK(same);
    }
  }
}

TEST_CASE("mean orbit size matches the exact sum") {
  const auto seq = DegreeSequence::constant(2);
  const MotherGroup group(seq);
  const std::size_t n = 256, replicas = 4000;
  double sum = 0, sum2 = 0;
  for (std::size_t r = 0; r < replicas; ++r) {
    const auto word = sample_word(group, n, 2024, r);
    const double size = static_cast<double>(OccupationMeasure(inverted_orbit_incremental(group, word)).support_size());
    sum += size;
    sum2 += size * size;
  }
  const double mean = sum / replicas;
  const double se = std::sqrt((sum2 / replicas - mean * mean) / (replicas - 1));
  const auto tail = return_tail(seq, n);
  CHECK(std::abs(mean - orbit_size_exact(tail, n)) < 4 * se);
}

TEST_CASE("assembly line return frequencies") {
  const auto seq = DegreeSequence({2, 3});
  const auto tail = return_tail(seq, 40);
  const int replicas = 40000;
  std::vector<double> alive(41, 0.0);
  for (int r = 0; r < replicas; ++r) {
    RandomStream rng(8, r);
    AssemblyLine line(seq);
    alive[0] += 1;
    for (std::size_t t = 1; t <= 40; ++t) {
      line.step(rng);
      if (line.at_root()) break;
      alive[t] += 1;
    }
  }
  for (std::size_t i = 0; i <= 40; ++i) {
    const double p = alive[i] / replicas;
    const double se = std::sqrt(std::max(tail[i] * (1 - tail[i]), 1e-6) / replicas);
    CHECK(std::abs(p - tail[i]) < 4.5 * se);
  }
}
