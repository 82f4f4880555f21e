#pragma once

// Seeded Monte Carlo experiments. Replica r of an experiment uses the stream
// stream_id(purpose, r) under the master seed; results are reduced in replica
// order, so reports do not depend on the number of worker threads.

#include <cstdint>
#include <span>
#include <vector>

#include "assemblyline/lamps.hpp"
#include "assemblyline/sequence.hpp"

namespace assemblyline {

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanEstimate mean_and_stderr(std::span<const double> samples);

struct OrbitSizeRow {
  std::uint64_t n = 0;
  std::size_t replicas = 0;
  MeanEstimate orbit_size;
  double exact = 0.0;  // sum_{i<=n} P(T > i)
};

// |Q_n| at every n in ns (one walk per replica, read at each n).
std::vector<OrbitSizeRow> orbit_size_experiment(const DegreeSequence& seq, std::span<const std::uint64_t> ns,
                                                std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

struct OccupationTailRow {
  std::uint64_t k = 0;
  MeanEstimate empirical;  // P(Q_n(o.Y_t^{-1}) <= k)
  double bound = 0.0;      // 1 - 2 P(T <= n)^{k/2}
};

struct RenewalResult {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  std::size_t replicas = 0;
  std::uint64_t censor = 0;      // gaps above n - t are recorded as n - t + 1
  double ks_statistic = 0.0;     // two-sample Kolmogorov-Smirnov D
  double ks_critical = 0.0;      // 1% level, 1.628 sqrt((n1 + n2) / (n1 n2))
  MeanEstimate inverted_gap;     // forward gap after t in V_t, censored
  MeanEstimate forward_return;   // first return of the forward chain, censored
  std::vector<OccupationTailRow> occupation_tail;
};

// Gap from t = n/2 to the next visit of the inverted orbit to o.Y_t^{-1},
// against first-return times of independent forward chains.
RenewalResult renewal_experiment(const DegreeSequence& seq, std::uint64_t n, std::size_t replicas, std::uint64_t seed,
                                 unsigned threads = 0);

struct ReturnTailRow {
  std::uint64_t i = 0;
  MeanEstimate empirical;  // P(T > i) from the assembly-line simulator
  double exact = 0.0;
};

std::vector<ReturnTailRow> return_tail_experiment(const DegreeSequence& seq, std::uint64_t horizon,
                                                  std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

struct SpeedRow {
  std::uint64_t n = 0;
  std::size_t replicas = 0;
  MeanEstimate lamp_length;
  MeanEstimate theoretical;
  MeanEstimate orbit_size;
  double exact_orbit_size = 0.0;
  double exact_tail = 0.0;
  double alpha = 0.0;
  double return_lower = 0.0;   // n p lambda_lower(1/p) / 16 with p = P(T > n)
  double bracket_lower = 0.0;  // speed bracket at alpha_n
  double bracket_upper = 0.0;
};

// Switch-walk-switch walks read at every grid point.
std::vector<SpeedRow> speed_experiment(const DegreeSequence& seq, const LampGroup& lamps,
                                       std::span<const std::uint64_t> grid, std::size_t replicas, std::uint64_t seed,
                                       unsigned threads = 0);

struct ReplicaStats {
  std::size_t replica = 0;
  std::uint64_t steps = 0;
  std::size_t orbit_size = 0;
  std::uint64_t max_visits = 0;
  std::size_t support_depth = 0;  // longest support among orbit points
  bool has_ray_tree = false;
  std::size_t rays = 0;
  std::size_t full_size = 0;
  std::size_t pruned_size = 0;
  std::size_t minimal_full_size = 0;
  bool pruned_bound = true;
  bool lone_child_property = true;
};

std::vector<ReplicaStats> simulate_orbits(const DegreeSequence& seq, std::uint64_t steps, std::size_t replicas,
                                          std::uint64_t seed, bool ray_tree, unsigned threads = 0);

}  // namespace assemblyline
