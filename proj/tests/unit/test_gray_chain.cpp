#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "assemblyline/automaton.hpp"
#include "assemblyline/error.hpp"
#include "assemblyline/gray_chain.hpp"

using namespace assemblyline;

namespace {

// Expected hitting times of position 0 by dense Gaussian elimination over the
// rationals: h(0) = 0, h(x) = 1 + sum_y P(x, y) h(y).
std::vector<Rational> hitting_times_by_elimination(const TruncatedChain& chain) {
  const std::size_t n = chain.top();  // unknowns h(1..top)
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, 0));
  for (std::size_t x = 1; x <= n; ++x) {
    const auto& t = chain.kernel(x);
    auto& row = a[x - 1];
    row[x - 1] += 1;
    row[x - 1] -= t.stay;
    if (x >= 2) row[x - 2] -= t.down;
    if (x + 1 <= n) {
      row[x] -= t.up;
    } else {
      row[x - 1] -= t.up;  // a +1 move at top would be a hold; zero here anyway
    }
    row[n] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<Rational> h(n + 1, 0);
  for (std::size_t x = 1; x <= n; ++x) {
    h[x] = a[x - 1][n] / a[x - 1][x - 1];
    h[x].canonicalize();
  }
  return h;
}

// P(T > i) from the exact law of the forward walk o.Y_i on boundary points,
// enumerating every generator with its weight.
std::vector<Rational> tail_from_boundary_walk(const DegreeSequence& seq, std::size_t horizon) {
  const MotherGroup group(seq);
  const std::uint32_t m1 = seq.degree(1);
  std::vector<std::uint32_t> images(m1);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<std::pair<Generator, Rational>> steps;
  Rational perms = 1;
  for (std::uint32_t k = 2; k <= m1; ++k) perms *= k;
  do {
    steps.push_back({Generator{Generator::Kind::Root, Permutation(images), 0}, 1 / (2 * perms)});
  } while (std::next_permutation(images.begin(), images.end()));
  const std::uint64_t order = group.propagating_order();
  for (std::uint64_t k = 0; k < order; ++k) {
    steps.push_back({Generator{Generator::Kind::Propagating, {}, k}, Rational(1, 2 * order)});
  }

  std::map<std::vector<std::uint32_t>, Rational> mass = {{{}, 1}};
  std::vector<Rational> tail = {1};
  for (std::size_t i = 1; i <= horizon; ++i) {
    std::map<std::vector<std::uint32_t>, Rational> next;
    for (const auto& [letters, p] : mass) {
      for (const auto& [g, w] : steps) {
        const auto q = group.apply(g, BoundaryPoint(letters));
        if (q.is_root()) continue;
        next[q.letters()] += p * w;
      }
    }
    mass = std::move(next);
    Rational total = 0;
    for (const auto& [letters, p] : mass) total += p;
    total.canonicalize();
    tail.push_back(total);
  }
  return tail;
}

}  // namespace

TEST_CASE("gray code examples") {
  CHECK(gray_position(BinaryState()) == 0);
  CHECK(gray_position(BinaryState({1})) == 1);
  CHECK(gray_position(BinaryState({1, 1})) == 2);
  CHECK(gray_position(BinaryState({0, 1})) == 3);
  CHECK(gray_bits(0, 5).is_origin());
  CHECK(gray_bits(2, 2) == BinaryState({1, 1}));
  CHECK(gray_bits(3, 2) == BinaryState({0, 1}));
  CHECK_THROWS_AS(gray_bits(4, 2), Error);
}

TEST_CASE("gray code is a one-bit-adjacent bijection") {
  for (std::size_t len = 1; len <= 12; ++len) {
    std::vector<bool> seen(std::size_t{1} << len, false);
    std::uint64_t prev_mask = 0;
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << len); ++p) {
      const auto b = gray_bits(p, len);
      CHECK(gray_position(b) == p);
      const auto mask = b.mask();
      REQUIRE(mask < seen.size());
      CHECK_FALSE(seen[mask]);
      seen[mask] = true;
      if (p > 0) CHECK(__builtin_popcountll(mask ^ prev_mask) == 1);
      prev_mask = mask;
    }
  }
}

TEST_CASE("step kernel examples") {
  const auto two = DegreeSequence::constant(2);
  const auto o = step_kernel(two, BinaryState());
  CHECK(o.stay == Rational(3, 4));
  CHECK(o.toggle_front == Rational(1, 4));
  CHECK(o.toggle_after_first_nonzero == 0);

  const auto t1 = position_kernel(two, 1);
  CHECK(t1.down == Rational(1, 4));
  CHECK(t1.stay == Rational(1, 2));
  CHECK(t1.up == Rational(1, 4));

  const auto t0 = position_kernel(DegreeSequence({3, 2}), 0);
  CHECK(t0.up == Rational(1, 3));
  CHECK(t0.stay == Rational(2, 3));
  CHECK(t0.down == 0);
}

TEST_CASE("truncated chains are stochastic and reversible") {
  for (const auto& seq : {DegreeSequence::constant(2), DegreeSequence::constant(4), DegreeSequence({2, 3, 5, 2})}) {
    for (std::size_t L = 1; L <= 8; ++L) {
      const auto chain = TruncatedChain::at_level(seq, L);
      CHECK(chain.top() == (std::uint64_t{1} << L) - 1);
      CHECK(chain.rows_sum_to_one());
      CHECK(chain.is_reversible());
      CHECK(chain.kernel(0).down == 0);
      CHECK(chain.kernel(chain.top()).up == 0);
      // pi(x) P(x, x+1) == pi(x+1) P(x+1, x), checked here independently.
      for (std::uint64_t x = 0; x < chain.top(); ++x) {
        CHECK(Rational(chain.weight(x)) * chain.kernel(x).up == Rational(chain.weight(x + 1)) * chain.kernel(x + 1).down);
      }
    }
  }
}

TEST_CASE("expected return time equals the volume") {
  CHECK(expected_return_time(TruncatedChain::at_level(DegreeSequence::constant(2), 1)) == 2);
  CHECK(expected_return_time(TruncatedChain::at_level(DegreeSequence::constant(2), 3)) == 8);
  CHECK(expected_return_time(TruncatedChain::at_level(DegreeSequence({2, 3}), 2)) == 6);
  for (const auto& seq : {DegreeSequence::constant(3), DegreeSequence({2, 4, 3})}) {
    for (std::size_t L = 1; L <= 5; ++L) {
      const auto chain = TruncatedChain::at_level(seq, L);
      const auto h = hitting_times_by_elimination(chain);
      const auto& t = chain.kernel(0);
      const Rational by_elimination = 1 + t.up * h[1];
      CHECK(by_elimination == Rational(volume(seq, L)));
      CHECK(expected_return_time_by_recursion(chain) == by_elimination);
      CHECK(expected_return_time(chain) == by_elimination);
    }
  }
}

TEST_CASE("hitting time from the top") {
  for (const auto& seq : {DegreeSequence::constant(2), DegreeSequence({2, 3}), DegreeSequence({3, 2, 4, 2})}) {
    for (std::size_t l = 1; l <= 4; ++l) {
      const auto chain = TruncatedChain::stopped_at(seq, l);
      const auto h = hitting_times_by_elimination(chain);
      const auto readings = hitting_time_readings(chain, l);
      CHECK(readings.recursion == h[chain.top()]);
      CHECK(readings.standard == h[chain.top()]);
      CHECK(hitting_time_top(chain, l) == h[chain.top()]);
      const Rational lower = resistance_factor(seq, l - 1) * Rational(volume(seq, l - 1)) * (seq.degree(l) - 1);
      CHECK(readings.lower_bound == lower);
      CHECK(h[chain.top()] >= lower);
    }
  }
  const auto c = TruncatedChain::stopped_at(DegreeSequence::constant(2), 2);
  CHECK(hitting_time_top(c, 2) >= 4);
  const auto c23 = TruncatedChain::stopped_at(DegreeSequence({2, 3}), 2);
  CHECK(hitting_time_top(c23, 2) >= 8);
}

TEST_CASE("resistance and escape probability") {
  const auto two = TruncatedChain::stopped_at(DegreeSequence::constant(2), 1);
  CHECK(effective_resistance(two, 0, 0) == 0);
  CHECK(effective_resistance(two, 0, 1) == 4);
  CHECK(effective_resistance(two, 0, 2) == 8);
  CHECK(escape_probability(two, 1) == Rational(1, 8));
  CHECK(escape_probability(two, 0) == Rational(1, 4));

  const DegreeSequence seq23({2, 3});
  const auto c = TruncatedChain::stopped_at(seq23, 2);
  CHECK(escape_probability(c, 2) >= Rational(1, 18));

  // Escape probability against the gambler's-ruin solution
  // P_x(hit top before 0), solved by elimination on harmonic functions.
  for (std::size_t l = 1; l <= 4; ++l) {
    const auto chain = TruncatedChain::stopped_at(DegreeSequence({3, 2, 4, 2}), l);
    const std::uint64_t top = chain.top();
    // Harmonic u with u(0) = 0, u(top) = 1 on a birth-death chain:
    // increments proportional to 1 / conductance.
    std::vector<Rational> u(top + 1, 0);
    Rational acc = 0;
    for (std::uint64_t x = 0; x < top; ++x) {
      acc += 1 / chain.conductance(x);
      u[x + 1] = acc;
    }
    for (auto& v : u) v /= acc;
    // Check harmonicity directly, then use it.
    for (std::uint64_t x = 1; x < top; ++x) {
      const auto& t = chain.kernel(x);
      CHECK(t.down * u[x - 1] + t.stay * u[x] + t.up * u[x + 1] == u[x]);
    }
    CHECK(escape_probability(chain, l) == chain.kernel(0).up * u[1]);
  }
}

TEST_CASE("return tail hand values") {
  const auto two = DegreeSequence::constant(2);
  const auto exact = return_tail_exact(two, 6);
  CHECK(exact[0] == 1);
  CHECK(exact[1] == Rational(1, 4));
  CHECK(exact[2] == Rational(3, 16));
  CHECK(orbit_size_exact(std::span<const Rational>(exact), 0) == 1);
  CHECK(orbit_size_exact(std::span<const Rational>(exact), 1) == Rational(5, 4));
  CHECK(orbit_size_exact(std::span<const Rational>(exact), 2) == Rational(23, 16));
}

TEST_CASE("lumped tail matches the law of the boundary walk") {
  for (const auto& seq : {DegreeSequence::constant(2), DegreeSequence::constant(3), DegreeSequence({2, 3}),
                          DegreeSequence({3, 2, 4})}) {
    const std::size_t horizon = seq.degree(1) == 3 ? 6 : 8;
    const auto oracle = tail_from_boundary_walk(seq, horizon);
    const auto exact = return_tail_exact(seq, horizon);
    for (std::size_t i = 0; i <= horizon; ++i) CHECK(exact[i] == oracle[i]);
  }
}

TEST_CASE("double tail agrees with the rational tail") {
  const DegreeSequence seq({2, 3, 2, 4});
  const auto exact = return_tail_exact(seq, 300);
  const auto fast = return_tail(seq, 300);
  for (std::size_t i = 0; i <= 300; ++i) {
    CHECK(fast[i] == doctest::Approx(exact[i].get_d()).epsilon(1e-12));
    if (i > 0) CHECK(fast[i] <= fast[i - 1]);
  }
}

TEST_CASE("hitting survival sums to the expected hitting time") {
  const auto chain = TruncatedChain::stopped_at(DegreeSequence::constant(2), 3);
  const auto s = hitting_time_survival(chain, chain.top(), 20000);
  double sum = 0;
  for (const double v : s) sum += v;
  CHECK(sum == doctest::Approx(hitting_time_top(chain, 3).get_d()).epsilon(1e-9));
}

TEST_CASE("return bounds and chain identities pass on shipped sequences") {
  for (const auto& seq : {DegreeSequence::constant(2), DegreeSequence::constant(4)}) {
    const auto tail = return_tail(seq, 1 << 12);
    const std::vector<std::uint64_t> ns = {1, 2, 10, 100, 1024, 4096};
    CHECK(check_return_bounds(seq, tail, ns).passed());
    ChainCheckLimits limits;
    limits.return_time_levels = 6;
    limits.hitting_levels = 5;
    limits.resistance_levels = 8;
    const auto report = check_chain_identities(seq, limits, tail);
    CHECK(report.passed());
    CHECK(report.checks.size() > 20);
  }
}
