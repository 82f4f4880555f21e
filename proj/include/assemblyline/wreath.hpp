#pragma once

// Switch-walk-switch walk on the permutational wreath product of a lamp group
// with the mother group acting on boundary points:
//   X_n = prod_{t=1}^{n} Lbar_t G_t Lbar'_t,
// where Lbar is a lamp switch at o. In the sparse form the switches of step t
// land on o.Y_{t-1}^{-1} and o.Y_t^{-1}.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "assemblyline/automaton.hpp"
#include "assemblyline/lamps.hpp"
#include "assemblyline/orbit.hpp"

namespace assemblyline {

using LampConfig = std::unordered_map<BoundaryPoint, std::int64_t, BoundaryPointHash>;

// Drops sites holding the identity so configurations compare by value.
LampConfig normalized(const LampConfig& config);

struct SwsTrajectory {
  WalkWord word;
  std::vector<std::int64_t> first_switch;   // L_t
  std::vector<std::int64_t> second_switch;  // L'_t
};

// Per step the stream is consumed as L_t, G_t, L'_t.
SwsTrajectory sample_sws(const MotherGroup& group, const LampGroup& lamps, std::size_t steps, std::uint64_t seed,
                         std::uint64_t stream);

// Lamp configuration of X_n from the inverted orbit.
LampConfig sparse_lamps(const MotherGroup& group, const LampGroup& lamps, const SwsTrajectory& trajectory);

// An element (lamps, g) of the wreath product.
struct WreathElement {
  LampConfig lamps;
  Automorphism group_part;
};

// (l, g)(l', g') = (l l'^{g^{-1}}, g g') with l'^{g^{-1}}(s) = l'(s.g).
WreathElement semidirect_multiply(const MotherGroup& group, const LampGroup& lamps, const WreathElement& a,
                                  const WreathElement& b);

// X_n by multiplying the 3n factors one at a time.
WreathElement direct_product_walk(const MotherGroup& group, const LampGroup& lamps, const SwsTrajectory& trajectory);

// Number of switches each site receives, and the prediction
// 2 Q_n(s) - 1(s = o) - 1(s = o.Y_n^{-1}) from the inverted orbit.
std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash> switch_counts(const MotherGroup& group,
                                                                                   const WalkWord& word);
std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash> predicted_switch_counts(
    const std::vector<BoundaryPoint>& inverted_orbit);

// sum_s length(lamp(s))
std::uint64_t lamp_length_stat(const LampConfig& config, const LampGroup& lamps);
// sum_s lambda_lower(Q_n(s))
double theoretical_speed_stat(const OccupationMeasure& occupation, const LampGroup& lamps);

struct WalkSummary {
  std::size_t steps = 0;
  std::uint64_t lamp_length = 0;
  double theoretical = 0.0;
  std::size_t orbit_size = 0;
};

// One streaming walk, summarized after each checkpoint (sorted, positive).
// Consumes the stream exactly as sample_sws does.
std::vector<WalkSummary> sws_walk(const MotherGroup& group, const LampGroup& lamps,
                                  std::span<const std::uint64_t> checkpoints, RandomStream& rng);

struct SeriesPoint {
  double n = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // from the standard errors of the means (delta method)
  double ci_low = 0.0;        // slope -+ 1.96 slope_stderr
  double ci_high = 0.0;
};

// Least squares of log(mean) on log(n). Needs at least 4 points with positive means.
Regression exponent_regression(std::span<const SeriesPoint> series);

}  // namespace assemblyline
