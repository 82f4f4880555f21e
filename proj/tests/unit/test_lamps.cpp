#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "assemblyline/error.hpp"
#include "assemblyline/lamps.hpp"

using namespace assemblyline;

namespace {

double log_binomial(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

// E|S_k| and H(S_k) for the simple walk by summing over the binomial law.
double srw_mean_abs(int k) {
  double s = 0;
  for (int i = 0; i <= k; ++i) s += std::exp(log_binomial(k, i) - k * std::log(2.0)) * std::abs(2 * i - k);
  return s;
}

double srw_entropy(int k) {
  double h = 0;
  for (int i = 0; i <= k; ++i) {
    const double lp = log_binomial(k, i) - k * std::log(2.0);
    h -= std::exp(lp) * lp;
  }
  return h;
}

}  // namespace

TEST_CASE("integer lamps: exact small-k tables") {
  const IntegerLamps z;
  for (int k = 0; k <= 64; ++k) {
    CHECK(z.mean_displacement()[k] == doctest::Approx(srw_mean_abs(k)).epsilon(1e-12));
    CHECK(z.entropy(k) == doctest::Approx(srw_entropy(k)).epsilon(1e-10));
  }
  CHECK(z.mean_displacement()[1] == 1.0);
  CHECK(z.mean_displacement()[2] == 1.0);
  CHECK(z.mean_displacement()[3] == 1.5);
  CHECK(z.step_entropy() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("integer lamps: profiles") {
  const IntegerLamps z;
  CHECK(z.lambda_lower(0) == 0);
  CHECK(z.lambda_upper(0.5) == 0);
  double prev_lo = 0, prev_hi = 0;
  for (double t = 0.25; t < 1e6; t *= 1.1) {
    const double lo = z.lambda_lower(t), hi = z.lambda_upper(t);
    CHECK(lo >= prev_lo);
    CHECK(hi >= prev_hi);
    prev_lo = lo;
    prev_hi = hi;
    if (t >= 1) {
      CHECK(lo >= 2.0 / std::numbers::pi * std::sqrt(t) - 1e-12);
      CHECK(hi <= std::sqrt(t) + 1e-12);
    }
  }
  for (int k = 1; k <= 3000; ++k) {
    CHECK(z.mean_abs(k) == doctest::Approx(srw_mean_abs(k)).epsilon(1e-10));
    CHECK(z.lambda_lower(k) <= z.lambda_upper(k) + 1e-12);
    // The true mean displacement lies between the profiles.
    CHECK(z.lambda_lower(k) <= srw_mean_abs(k) + 1e-9);
    CHECK(z.lambda_upper(k) >= srw_mean_abs(k) - 1e-9);
  }
  for (int a = 1; a <= 400; a += 7) {
    for (int b = 1; b <= 400; b += 5) {
      CHECK(z.lambda_upper(a + b) <= z.lambda_upper(a) + z.lambda_upper(b) + 1e-12);
      CHECK(z.lambda_lower(a + b) <= z.lambda_lower(a) + z.lambda_lower(b) + 1e-12);
    }
  }
  // Entropy beyond the table is the Gaussian approximation, interpolated between integers.
  CHECK(z.entropy(1000) == doctest::Approx(0.5 * std::log(std::numbers::pi * std::numbers::e * 500)));
  CHECK(z.entropy(10.5) == doctest::Approx(0.5 * (srw_entropy(10) + srw_entropy(11))));
}

TEST_CASE("binary lamps") {
  const BinaryLamps z2;
  CHECK(z2.compose(1, 1) == 0);
  CHECK(z2.length(1) == 1);
  CHECK(z2.length(0) == 0);
  CHECK(z2.lambda_lower(0.01) == 0.5);
  CHECK(z2.lambda_upper(3) == 0.5);
  CHECK(z2.entropy(0.5) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(z2.entropy(7) == doctest::Approx(std::log(2.0)));
  CHECK(z2.step_entropy() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("switch distributions are symmetric") {
  RandomStream rng(4, 4);
  const IntegerLamps z;
  const BinaryLamps z2;
  const int draws = 100000;
  double sum = 0, ones = 0;
  for (int i = 0; i < draws; ++i) {
    const auto s = z.sample_switch(rng);
    REQUIRE((s == 1 || s == -1));
    sum += s;
    ones += z2.sample_switch(rng);
  }
  CHECK(std::abs(sum / draws) < 4 / std::sqrt(double(draws)));
  CHECK(std::abs(ones / draws - 0.5) < 2 / std::sqrt(double(draws)));
}

TEST_CASE("lamp group factory") {
  CHECK(make_lamp_group("z")->name() == "z");
  CHECK(make_lamp_group("z2")->name() == "z2");
  CHECK_THROWS_AS(make_lamp_group("q"), Error);
}
