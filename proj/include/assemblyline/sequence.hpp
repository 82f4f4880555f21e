#pragma once

// Degree sequences of spherically symmetric rooted trees and the exact
// scale quantities derived from them:
//
//   v_l = m_1 ... m_l                  (volume, integer)
//   r_l = prod m_i / (m_i - 1)         (resistance factor, rational)
//   n_l = r_l v_l                      (time scale, rational)
//   l(n) = min { l : n_l >= n },  alpha_n = log v_{l(n)} / log n
//
// Levels are 1-indexed; level 0 is the empty product.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace assemblyline {

using BigInt = mpz_class;
using Rational = mpq_class;

enum class ExtensionKind { Constant, Periodic };

// How m_l is defined past the explicit head. Constant repeats the last head
// entry; Periodic repeats the last `period` head entries.
struct Extension {
  ExtensionKind kind = ExtensionKind::Constant;
  std::size_t period = 1;

  bool operator==(const Extension&) const = default;
};

class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<std::uint32_t> head, Extension extension = {});

  static DegreeSequence constant(std::uint32_t degree);

  // m_level for level >= 1.
  std::uint32_t degree(std::size_t level) const;
  std::uint32_t m_star() const noexcept { return m_star_; }

  // lcm of the distinct degree values; the order of the cyclic group of
  // propagating actions built from full cycles.
  std::uint64_t cycle_order() const noexcept { return cycle_order_; }

  const std::vector<std::uint32_t>& head() const noexcept { return head_; }
  const Extension& extension() const noexcept { return extension_; }

  nlohmann::json to_json() const;
  static DegreeSequence from_json(const nlohmann::json& j);

  bool operator==(const DegreeSequence&) const = default;

 private:
  std::vector<std::uint32_t> head_;
  Extension extension_;
  std::uint32_t m_star_ = 0;
  std::uint64_t cycle_order_ = 1;
};

BigInt volume(const DegreeSequence& seq, std::size_t level);
Rational resistance_factor(const DegreeSequence& seq, std::size_t level);
Rational time_scale(const DegreeSequence& seq, std::size_t level);

struct LevelInfo {
  std::size_t level = 0;
  double alpha = 0.0;
};

// l(n) and alpha_n for real n >= 1. n = 1 maps to level 0 with alpha 0.
LevelInfo level_of(const DegreeSequence& seq, double n);

// Natural logarithm of a positive big integer or rational, accurate to
// double precision far beyond the double range.
double log_of(const BigInt& value);
double log_of(const Rational& value);

// Cached per-level table of v_l, r_l, n_l up to a fixed level. Lookups of
// l(n) are exact comparisons against the rational n_l.
class ScaleTable {
 public:
  ScaleTable(const DegreeSequence& seq, std::size_t max_level);

  std::size_t max_level() const noexcept { return volumes_.size() - 1; }
  const BigInt& volume(std::size_t level) const { return volumes_.at(level); }
  const Rational& resistance(std::size_t level) const { return resistances_.at(level); }
  const Rational& time_scale(std::size_t level) const { return scales_.at(level); }
  double log_volume(std::size_t level) const { return log_volumes_.at(level); }

  // Throws OutOfRange when n exceeds n_{max_level}.
  LevelInfo level_of(double n) const;

  // Largest l with n_l <= n (the level whose volume is in force on
  // [n_l, n_{l+1})).
  std::size_t floor_level(double n) const;

 private:
  std::vector<BigInt> volumes_;
  std::vector<Rational> resistances_;
  std::vector<Rational> scales_;
  std::vector<double> scale_doubles_;
  std::vector<double> log_volumes_;
};

}  // namespace assemblyline
