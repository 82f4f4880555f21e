#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <stdexcept>

#include "assemblyline/error.hpp"
#include "assemblyline/grid.hpp"
#include "assemblyline/parallel.hpp"

using namespace assemblyline;

TEST_CASE("grid syntax") {
  CHECK(parse_grid("2^3:2^6") == std::vector<std::uint64_t>{8, 16, 32, 64});
  CHECK(parse_grid("10^0:10^2") == std::vector<std::uint64_t>{1, 10, 100});
  CHECK(parse_grid("5,3,2^2,3") == std::vector<std::uint64_t>{3, 4, 5});
  CHECK(parse_grid("1000") == std::vector<std::uint64_t>{1000});
  CHECK(parse_grid("2^63") == std::vector<std::uint64_t>{1ull << 63});
  for (const char* bad : {"", "x", "2^3:3^4", "2^5:2^3", "4:16", "2^64", "0", "1,,2", "3,"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_grid(bad), Error);
  }
}

TEST_CASE("parallel_for visits every index once") {
  for (const unsigned threads : {0u, 1u, 2u, 7u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, threads);
    for (const int h : hits) CHECK(h == 1);
  }
  parallel_for(0, [](std::size_t) { FAIL("no work expected"); }, 3);
}

TEST_CASE("parallel_for rethrows") {
  std::atomic<int> ran{0};
  CHECK_THROWS_AS(parallel_for(
                      100,
                      [&](std::size_t i) {
                        ++ran;
                        if (i == 13) throw std::runtime_error("boom");
                      },
                      4),
                  std::runtime_error);
  CHECK(ran.load() >= 14);
}
