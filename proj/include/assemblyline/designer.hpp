#pragma once

// Inductive construction of a bounded degree sequence whose exponent
// profile n^{alpha_n} tracks a log-Lipschitz target f up to constants.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assemblyline/check.hpp"
#include "assemblyline/sequence.hpp"

namespace assemblyline {

// f : [1, inf) -> (0, inf) with f(1) = 1, declared to satisfy
// a^{1/2} f(n) <= f(a n) <= a^gamma f(n) for all a, n >= 1.
struct TargetFunction {
  std::string name;
  std::function<double(double)> evaluate;
  double gamma = 0.5;
};

// Named families: "pow:beta" for n^beta and "pow-log:beta,k" for
// n^beta * log(e n)^k. The declared gamma is taken from the caller.
TargetFunction parse_target(std::string_view spec, double gamma);
TargetFunction power_target(double beta, double gamma);

// F with band [3/4, gamma] becomes F(n)^2 / n with band [1/2, 2 gamma - 1].
// This is the target the speed construction feeds to the designer.
TargetFunction speed_target_to_entropy_target(const TargetFunction& speed);

struct LipschitzViolation {
  double a = 0.0;
  double n = 0.0;
  double ratio = 0.0;  // f(a n) / f(n)
  double lower = 0.0;  // a^{1/2}
  double upper = 0.0;  // a^gamma
};

struct LipschitzReport {
  std::size_t pairs_checked = 0;
  std::vector<LipschitzViolation> violations;
  bool passed() const { return violations.empty(); }
  // Violation with the largest relative excess; only meaningful if !passed().
  LipschitzViolation worst() const;
};

LipschitzReport validate_log_lipschitz(const TargetFunction& f,
                                       std::span<const std::pair<double, double>> grid);

// count x count pairs (a, n), log-spaced on [1, a_max] x [1, n_max].
std::vector<std::pair<double, double>> log_spaced_pairs(std::size_t count, double a_max, double n_max);

// Smallest m >= 2 with (m^2/(m-1))^gamma <= m.
std::uint32_t choose_m_star(double gamma);

// c_gamma = 3 e^{1/(1-gamma)}.
double tracking_constant(double gamma);

struct DesignStep {
  std::size_t level = 0;
  double time_scale = 0.0;  // n_level
  double volume = 0.0;      // v_level
  double ratio = 0.0;       // f(n_level) / v_level
  std::uint32_t next_degree = 0;  // m_{level+1}; 0 on the final row
  double step_ratio = 0.0;        // y for the transition level -> level+1
  double step_lower = 0.0;        // 1/sqrt(m-1)
  double step_upper = 0.0;        // (m^2/(m-1))^gamma / m
};

struct DesignCertificate {
  std::string target;
  double gamma = 0.0;
  double c_gamma = 0.0;
  std::uint32_t m_star = 0;
  std::vector<DesignStep> trace;

  // The induction invariant 1/sqrt(m*-1) <= f(n_l)/v_l <= 2^{2 gamma - 1}
  // at every level, and the per-step bracket on y.
  CheckReport invariant_checks() const;
  nlohmann::json to_json() const;
};

std::pair<DegreeSequence, DesignCertificate> design_sequence(const TargetFunction& f, std::size_t levels);

// Tracking checks over n_grid:
//   * c_gamma^{-1} <= f(n)/n^{alpha_n} <= 2 c_gamma
//   * per level n_l in range: 1/sqrt(m*-1) <= f(n_l)/v_l <= 2^{2 gamma - 1}
//   * 1/sqrt(m*-1) <= f(n)/v_{floor level} < 2 m*
//   * 1/(m* sqrt(m*-1)) <= f(n)/n^{alpha_n} <= 2^{2 gamma - 1}
// m* is the larger of choose_m_star(gamma) and the sequence maximum.
CheckReport verify_tracking(const DegreeSequence& seq, const TargetFunction& f,
                            std::span<const double> n_grid);

}  // namespace assemblyline
