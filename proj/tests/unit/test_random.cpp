#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "assemblyline/random.hpp"

using namespace assemblyline;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  // Vectors from the Random123 distribution (kat_vectors).
  using A = std::array<std::uint32_t, 4>;
  using K = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(A{0, 0, 0, 0}, K{0, 0}) == A{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(A{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        A{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(A{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        A{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::vector<std::uint32_t> xa, xc, xd;
  for (int i = 0; i < 100; ++i) {
    const auto v = a.next_u32();
    CHECK(v == b.next_u32());
    xa.push_back(v);
    xc.push_back(c.next_u32());
    xd.push_back(d.next_u32());
  }
  CHECK(xa != xc);
  CHECK(xa != xd);
  CHECK(stream_id(1, 0) != stream_id(1, 1));
  CHECK(stream_id(1, 0) != stream_id(2, 0));
}

TEST_CASE("uniform_below is unbiased (chi-square)") {
  RandomStream rng(1, 1);
  for (const std::uint64_t n : {2u, 3u, 7u, 12u}) {
    std::vector<double> counts(n, 0.0);
    const int draws = 120000;
    for (int i = 0; i < draws; ++i) {
      const auto v = rng.uniform_below(n);
      REQUIRE(v < n);
      counts[v] += 1;
    }
    double chi = 0;
    const double e = static_cast<double>(draws) / n;
    for (const double c : counts) chi += (c - e) * (c - e) / e;
    // 0.999 quantile of chi-square with n - 1 <= 11 degrees of freedom.
    CHECK(chi < 31.3);
  }
}

TEST_CASE("uniform01 and coin") {
  RandomStream rng(5, 5);
  double sum = 0;
  int heads = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    heads += rng.coin() ? 1 : 0;
  }
  CHECK(std::abs(sum / draws - 0.5) < 4 * std::sqrt(1.0 / 12 / draws));
  CHECK(std::abs(heads / double(draws) - 0.5) < 4 * std::sqrt(0.25 / draws));
}
