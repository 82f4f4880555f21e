#pragma once

// Lamp groups for the permutational wreath product. Elements are int64;
// a lamp group supplies its switch distribution, word length, and the
// displacement and entropy profiles of its own random walk:
//   lambda_lower(t) = inf_{n >= t} E|L_1 ... L_n|
//   lambda_upper(t) = max_{n <= t} E|L_1 ... L_n|
//   entropy(k)      = H(L_1 ... L_k), extended linearly between integers
// All logarithms are natural.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "assemblyline/random.hpp"

namespace assemblyline {

class LampGroup {
 public:
  virtual ~LampGroup() = default;

  virtual std::string name() const = 0;
  virtual std::int64_t sample_switch(RandomStream& rng) const = 0;
  virtual std::int64_t compose(std::int64_t a, std::int64_t b) const = 0;
  virtual std::uint64_t length(std::int64_t x) const = 0;
  std::int64_t identity() const { return 0; }

  virtual double lambda_lower(double t) const = 0;
  virtual double lambda_upper(double t) const = 0;
  virtual double entropy(double k) const = 0;
  virtual double step_entropy() const = 0;
};

// Z with uniform +-1 switches.
class IntegerLamps final : public LampGroup {
 public:
  IntegerLamps();

  std::string name() const override { return "z"; }
  std::int64_t sample_switch(RandomStream& rng) const override { return rng.coin() ? 1 : -1; }
  std::int64_t compose(std::int64_t a, std::int64_t b) const override { return a + b; }
  std::uint64_t length(std::int64_t x) const override { return static_cast<std::uint64_t>(x < 0 ? -x : x); }

  // E|S_n| is nondecreasing in n, so both profiles are E|S_k| at k = ceil t
  // and k = floor t. It lies between (2/pi) sqrt(k) and sqrt(k).
  double lambda_lower(double t) const override;
  double lambda_upper(double t) const override;
  // Exact binomial entropy for k <= table size, then (1/2) log(pi e k / 2).
  double entropy(double k) const override;
  double step_entropy() const override;

  static constexpr std::size_t kTableSize = 64;
  // Exact for k <= table size, asymptotic series (relative error below 1e-13) beyond.
  double mean_abs(std::uint64_t k) const;
  const std::vector<double>& mean_displacement() const noexcept { return mean_abs_; }

 private:
  double entropy_at(std::size_t k) const;

  std::vector<double> mean_abs_;  // E|S_k|, k = 0..kTableSize
  std::vector<double> entropy_;   // H(S_k), k = 0..kTableSize
};

// Z/2 with uniform {0, 1} switches.
class BinaryLamps final : public LampGroup {
 public:
  std::string name() const override { return "z2"; }
  std::int64_t sample_switch(RandomStream& rng) const override { return rng.coin() ? 1 : 0; }
  std::int64_t compose(std::int64_t a, std::int64_t b) const override { return a ^ b; }
  std::uint64_t length(std::int64_t x) const override { return static_cast<std::uint64_t>(x & 1); }

  double lambda_lower(double t) const override;
  double lambda_upper(double t) const override;
  double entropy(double k) const override;
  double step_entropy() const override;
};

// "z" or "z2".
std::unique_ptr<LampGroup> make_lamp_group(const std::string& name);

}  // namespace assemblyline
