#include "assemblyline/lamps.hpp"

#include <cmath>
#include <numbers>

#include "assemblyline/error.hpp"

namespace assemblyline {

IntegerLamps::IntegerLamps() {
  // Distribution of S_k by repeated convolution with (1/2, 0, 1/2).
  std::vector<double> dist{1.0};
  mean_abs_.push_back(0.0);
  entropy_.push_back(0.0);
  for (std::size_t k = 1; k <= kTableSize; ++k) {
    std::vector<double> next(dist.size() + 2, 0.0);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      next[i] += 0.5 * dist[i];
      next[i + 2] += 0.5 * dist[i];
    }
    dist = std::move(next);
    double mean = 0.0;
    double h = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const double x = static_cast<double>(i) - static_cast<double>(k);
      mean += dist[i] * std::abs(x);
      if (dist[i] > 0.0) h -= dist[i] * std::log(dist[i]);
    }
    mean_abs_.push_back(mean);
    entropy_.push_back(h);
  }
}

double IntegerLamps::mean_abs(std::uint64_t k) const {
  if (k <= kTableSize) return mean_abs_[k];
  // E|S_k| = 2j C(2j, j) 4^{-j} with j = ceil(k / 2), and
  // C(2j, j) 4^{-j} = (pi j)^{-1/2} (1 - 1/(8j) + 1/(128j^2) + 5/(1024j^3) - 21/(32768j^4)
  //                                   - 399/(262144j^5) + 869/(4194304j^6) + ...).
  const double j = static_cast<double>((k + 1) / 2);
  const double x = 1.0 / j;
  const double series =
      1.0 + x * (-1.0 / 8 + x * (1.0 / 128 + x * (5.0 / 1024 + x * (-21.0 / 32768 + x * (-399.0 / 262144 +
                                                                                      x * 869.0 / 4194304)))));
  return 2.0 * j * series / std::sqrt(std::numbers::pi * j);
}

double IntegerLamps::lambda_lower(double t) const {
  if (t <= 0.0) return 0.0;
  return mean_abs(static_cast<std::uint64_t>(std::ceil(t)));
}

double IntegerLamps::lambda_upper(double t) const {
  if (t < 1.0) return 0.0;
  return mean_abs(static_cast<std::uint64_t>(std::floor(t)));
}

double IntegerLamps::entropy_at(std::size_t k) const {
  if (k <= kTableSize) return entropy_[k];
  return 0.5 * std::log(std::numbers::pi * std::numbers::e * static_cast<double>(k) / 2.0);
}

double IntegerLamps::entropy(double k) const {
  if (k <= 0.0) return 0.0;
  const double lo = std::floor(k);
  const auto i = static_cast<std::size_t>(lo);
  const double frac = k - lo;
  if (frac == 0.0) return entropy_at(i);
  return (1.0 - frac) * entropy_at(i) + frac * entropy_at(i + 1);
}

double IntegerLamps::step_entropy() const { return std::log(2.0); }

double BinaryLamps::lambda_lower(double t) const { return t > 0.0 ? 0.5 : 0.0; }

double BinaryLamps::lambda_upper(double t) const { return t >= 1.0 ? 0.5 : 0.0; }

double BinaryLamps::entropy(double k) const {
  if (k <= 0.0) return 0.0;
  return std::min(k, 1.0) * std::log(2.0);
}

double BinaryLamps::step_entropy() const { return std::log(2.0); }

std::unique_ptr<LampGroup> make_lamp_group(const std::string& name) {
  if (name == "z") return std::make_unique<IntegerLamps>();
  if (name == "z2") return std::make_unique<BinaryLamps>();
  throw_error(ErrorCode::InvalidArgument, "unknown lamp group: " + name + " (expected z or z2)");
}

}  // namespace assemblyline
