#pragma once

// Closed-form evaluators for the speed and entropy inequalities, and the
// sweep that checks them against exact chain quantities. Natural logs.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "assemblyline/check.hpp"
#include "assemblyline/lamps.hpp"
#include "assemblyline/sequence.hpp"

namespace assemblyline {

// 4 sqrt(n max(H, eta)); eta < 1 is rejected.
double varopoulos_carne_speed(double n, double entropy, double eta);

// n p lambda_lower(1/p) / 16 for 0 < p <= 1.
double return_speed_lower(double n, double p, const std::function<double(double)>& lambda_lower);

// Entropy bounds from the ray-tree count, q = E|Q_n|.
struct EntropyTerms {
  double support_given_size = 0.0;  // 6 log(m*+1) q
  double support = 0.0;             // 6 log(m*+1) q + log(n+1)
  double element_given_size = 0.0;  // 5 m*^3 log(m*) q
  double element = 0.0;             // 5 m*^3 log(m*) q + log(n+1)
};
EntropyTerms ray_tree_entropy_terms(double n, double orbit_size, std::uint32_t m_star);

struct OrbitBoundInputs {
  double n = 0.0;
  double p = 0.0;           // <= P(T > n)
  double q = 0.0;           // >= sum_{i<=n} P(T > i)
  double orbit_size = 0.0;  // E|Q_n|
  double entropy_element = 0.0;             // H(Y_n)
  double entropy_support_given_size = 0.0;  // H(supp Q_n | |Q_n|)
  double entropy_support = 0.0;             // H(supp Q_n)
};

struct OrbitBounds {
  double speed_lower = 0.0;          // n p lambda_lower(1/p) / 16
  double speed_upper_entropy = 0.0;  // 4 sqrt(n (H_Y + H_S|. + 2q(h(n/q) + log(n+1))))
  double speed_upper_tight = 0.0;    // 3 lambda_upper(n/q) q + 12 sqrt(n (H_Y + H_S + E|Q_n|))
  double entropy_lower = 0.0;        // n p^2 lambda_lower(1/p)^2 / 4096
  double entropy_upper = 0.0;        // H_Y + H_S|. + 2q(h(n/q) + log(n+1))
};

OrbitBounds orbit_bounds(const OrbitBoundInputs& in, const LampGroup& lamps);

// Preconditions p <= P(T > n) and q >= E|Q_n| against exact values.
CheckReport orbit_bound_preconditions(const OrbitBoundInputs& in, double exact_tail, double exact_orbit_size);

struct SpeedBracket {
  double lower = 0.0;  // n^a lambda_lower(n^{1-a} / (500 m^2)) / (8000 m^2)
  double upper = 0.0;  // 6 n^a lambda_upper(n^{1-a}) + 48 m^2 n^{(1+a)/2}
};
// Rejects profiles with lambda_lower > lambda_upper at the integers next to n^{1-a}.
SpeedBracket speed_bracket(double n, double alpha, std::uint32_t m_star, const LampGroup& lamps);

struct EntropyBracket {
  double lower_general = 0.0;  // n^{2a-1} lambda_lower(n^{1-a})^2 / (2^30 m^4)
  double lower_finite = 0.0;   // h_1 n^a / (500 m^2)
  double upper = 0.0;          // (15 m^4 + 2 h(n^{1-a})) n^a
};
EntropyBracket entropy_bracket(double n, double alpha, std::uint32_t m_star, const LampGroup& lamps);

enum class ConstantSide { Entropy, Speed };

struct ConstantBracket {
  double constant = 0.0;  // C_gamma (entropy) or C_{2 gamma - 1} (speed)
  double lower_coefficient = 0.0;
  double upper_coefficient = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
// Entropy: [log 2 / (1000 C^3), 16 C^{9/2}] f(n), gamma in [1/2, 1).
// Speed:   [2^{-19} C^{-7/2}, 49 C^{9/4}] f(n) with C = C_{2 gamma - 1},
//          gamma in [3/4, 1).
ConstantBracket explicit_constants(double gamma, double f_n, ConstantSide side);

// Midpoint concavity of x -> x h(n / x) over all pairs of grid points.
CheckReport concavity_check(const std::function<double(double)>& h, double n, std::span<const double> grid,
                            double tolerance = 1e-9);

// Exact-input sweep for one sequence over n_grid (each n <= max_horizon):
// return-probability sandwich, chain identities, and for both shipped lamp
// groups the internal consistency of the orbit bounds and the containment of the
// exact-input bounds inside the speed and entropy brackets.
CheckReport verify_sequence(const DegreeSequence& seq, std::span<const std::uint64_t> n_grid);

inline constexpr std::uint64_t kMaxVerifyHorizon = std::uint64_t{1} << 18;

}  // namespace assemblyline
