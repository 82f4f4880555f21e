#include "assemblyline/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "assemblyline/bounds.hpp"
#include "assemblyline/error.hpp"
#include "assemblyline/gray_chain.hpp"
#include "assemblyline/orbit.hpp"
#include "assemblyline/parallel.hpp"
#include "assemblyline/ray_tree.hpp"
#include "assemblyline/wreath.hpp"

namespace assemblyline {

namespace {

enum Purpose : std::uint64_t {
  kOrbitSize = 1,
  kRenewalInverted = 2,
  kRenewalForward = 3,
  kReturnTail = 4,
  kSpeed = 5,
  kSimulate = 6,
};

std::vector<std::uint64_t> sorted_unique(std::span<const std::uint64_t> xs) {
  std::vector<std::uint64_t> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  require(!v.empty() && v.front() >= 1, ErrorCode::InvalidArgument, "grid values must be positive");
  return v;
}

// First time >= 1 the forward chain is back at o, or cap + 1 if not by cap.
std::uint64_t censored_return(AssemblyLine& line, RandomStream& rng, std::uint64_t cap) {
  line.reset();
  for (std::uint64_t s = 1; s <= cap; ++s) {
    line.step(rng);
    if (line.at_root()) return s;
  }
  return cap + 1;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace

MeanEstimate mean_and_stderr(std::span<const double> samples) {
  MeanEstimate e;
  if (samples.empty()) return e;
  const double k = static_cast<double>(samples.size());
  double mean = 0.0;
  for (const double x : samples) mean += x;
  mean /= k;
  double ss = 0.0;
  for (const double x : samples) ss += (x - mean) * (x - mean);
  e.mean = mean;
  e.stderr_ = samples.size() > 1 ? std::sqrt(ss / (k - 1.0) / k) : 0.0;
  return e;
}

std::vector<OrbitSizeRow> orbit_size_experiment(const DegreeSequence& seq, std::span<const std::uint64_t> ns,
                                                std::size_t replicas, std::uint64_t seed, unsigned threads) {
  const auto grid = sorted_unique(ns);
  const MotherGroup group(seq);
  const std::uint64_t last = grid.back();
  std::vector<std::vector<double>> sizes(grid.size(), std::vector<double>(replicas));
  parallel_for(
      replicas,
      [&](std::size_t r) {
        RandomStream rng(seed, stream_id(kOrbitSize, r));
        InvertedOrbitTracker tracker(group);
        OccupationMeasure q;
        q.add(tracker.current());
        std::size_t next = 0;
        for (std::uint64_t t = 1; t <= last; ++t) {
          q.add(tracker.push(group.sample_step(rng)));
          if (t == grid[next]) sizes[next++][r] = static_cast<double>(q.support_size());
        }
      },
      threads);
  const auto tail = return_tail(seq, last);
  std::vector<OrbitSizeRow> rows;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    rows.push_back({grid[k], replicas, mean_and_stderr(sizes[k]), orbit_size_exact(tail, grid[k])});
  }
  return rows;
}

RenewalResult renewal_experiment(const DegreeSequence& seq, std::uint64_t n, std::size_t replicas, std::uint64_t seed,
                                 unsigned threads) {
  require(n >= 2, ErrorCode::InvalidArgument, "renewal experiment needs n >= 2");
  const MotherGroup group(seq);
  RenewalResult res;
  res.n = n;
  res.t = n / 2;
  res.replicas = replicas;
  res.censor = n - res.t;
  const std::vector<std::uint64_t> ks = {1, 2, 4, 8, 16, 32, 64, 128, 256};

  std::vector<double> gaps(replicas), returns(replicas), occupation(replicas);
  parallel_for(
      replicas,
      [&](std::size_t r) {
        RandomStream rng(seed, stream_id(kRenewalInverted, r));
        InvertedOrbitTracker tracker(group);
        std::vector<BoundaryPoint> points;
        points.reserve(n + 1);
        points.push_back(tracker.current());
        for (std::uint64_t s = 1; s <= n; ++s) points.push_back(tracker.push(group.sample_step(rng)));
        const auto& target = points[res.t];
        std::uint64_t gap = res.censor + 1;
        std::uint64_t visits = 0;
        for (std::uint64_t i = 0; i <= n; ++i) {
          if (points[i] != target) continue;
          ++visits;
          if (i > res.t && gap == res.censor + 1) gap = i - res.t;
        }
        gaps[r] = static_cast<double>(gap);
        occupation[r] = static_cast<double>(visits);

        RandomStream forward_rng(seed, stream_id(kRenewalForward, r));
        AssemblyLine line(seq);
        returns[r] = static_cast<double>(censored_return(line, forward_rng, res.censor));
      },
      threads);

  res.inverted_gap = mean_and_stderr(gaps);
  res.forward_return = mean_and_stderr(returns);
  res.ks_statistic = ks_two_sample(gaps, returns);
  const double n1 = static_cast<double>(replicas);
  res.ks_critical = 1.628 * std::sqrt((n1 + n1) / (n1 * n1));

  const auto tail = return_tail(seq, n);
  const double returned = 1.0 - tail[n];
  for (const auto k : ks) {
    std::vector<double> hits(replicas);
    for (std::size_t r = 0; r < replicas; ++r) hits[r] = occupation[r] <= static_cast<double>(k) ? 1.0 : 0.0;
    res.occupation_tail.push_back({k, mean_and_stderr(hits), 1.0 - 2.0 * std::pow(returned, k / 2.0)});
  }
  return res;
}

std::vector<ReturnTailRow> return_tail_experiment(const DegreeSequence& seq, std::uint64_t horizon,
                                                  std::size_t replicas, std::uint64_t seed, unsigned threads) {
  std::vector<std::uint64_t> first_return(replicas);
  parallel_for(
      replicas,
      [&](std::size_t r) {
        RandomStream rng(seed, stream_id(kReturnTail, r));
        AssemblyLine line(seq);
        first_return[r] = censored_return(line, rng, horizon);
      },
      threads);
  const auto tail = return_tail(seq, horizon);
  std::vector<ReturnTailRow> rows;
  std::vector<double> alive(replicas);
  for (std::uint64_t i = 0; i <= horizon; ++i) {
    for (std::size_t r = 0; r < replicas; ++r) alive[r] = first_return[r] > i ? 1.0 : 0.0;
    rows.push_back({i, mean_and_stderr(alive), tail[i]});
  }
  return rows;
}

std::vector<SpeedRow> speed_experiment(const DegreeSequence& seq, const LampGroup& lamps,
                                       std::span<const std::uint64_t> grid_in, std::size_t replicas,
                                       std::uint64_t seed, unsigned threads) {
  const auto grid = sorted_unique(grid_in);
  const MotherGroup group(seq);
  std::vector<std::vector<WalkSummary>> per_replica(replicas);
  parallel_for(
      replicas,
      [&](std::size_t r) {
        RandomStream rng(seed, stream_id(kSpeed, r));
        per_replica[r] = sws_walk(group, lamps, grid, rng);
      },
      threads);

  const auto tail = return_tail(seq, grid.back());
  std::size_t levels = 1;
  while (time_scale(seq, levels).get_d() < static_cast<double>(grid.back())) ++levels;
  const ScaleTable table(seq, levels);
  std::vector<SpeedRow> rows;
  std::vector<double> a(replicas), b(replicas), c(replicas);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t r = 0; r < replicas; ++r) {
      a[r] = static_cast<double>(per_replica[r][k].lamp_length);
      b[r] = per_replica[r][k].theoretical;
      c[r] = static_cast<double>(per_replica[r][k].orbit_size);
    }
    SpeedRow row;
    row.n = grid[k];
    row.replicas = replicas;
    row.lamp_length = mean_and_stderr(a);
    row.theoretical = mean_and_stderr(b);
    row.orbit_size = mean_and_stderr(c);
    row.exact_orbit_size = orbit_size_exact(tail, grid[k]);
    row.exact_tail = tail[grid[k]];
    const double nd = static_cast<double>(grid[k]);
    row.alpha = table.level_of(nd).alpha;
    row.return_lower = return_speed_lower(nd, row.exact_tail, [&](double t) { return lamps.lambda_lower(t); });
    const auto bracket = speed_bracket(nd, row.alpha, seq.m_star(), lamps);
    row.bracket_lower = bracket.lower;
    row.bracket_upper = bracket.upper;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ReplicaStats> simulate_orbits(const DegreeSequence& seq, std::uint64_t steps, std::size_t replicas,
                                          std::uint64_t seed, bool ray_tree, unsigned threads) {
  const MotherGroup group(seq);
  std::vector<ReplicaStats> out(replicas);
  parallel_for(
      replicas,
      [&](std::size_t r) {
        RandomStream rng(seed, stream_id(kSimulate, r));
        InvertedOrbitTracker tracker(group);
        std::vector<BoundaryPoint> points;
        points.reserve(steps + 1);
        points.push_back(tracker.current());
        for (std::uint64_t s = 1; s <= steps; ++s) points.push_back(tracker.push(group.sample_step(rng)));
        const OccupationMeasure q(points);
        ReplicaStats& st = out[r];
        st.replica = r;
        st.steps = steps;
        st.orbit_size = q.support_size();
        for (const auto& [p, count] : q.counts()) {
          st.max_visits = std::max(st.max_visits, count);
          st.support_depth = std::max(st.support_depth, p.support_length());
        }
        if (ray_tree) {
          const RayTree tree(seq, points);
          st.has_ray_tree = true;
          st.rays = tree.ray_count();
          st.full_size = tree.full_size();
          st.pruned_size = tree.pruned_size();
          st.minimal_full_size = tree.minimal_full_size();
          st.pruned_bound = tree.pruned_size() + 1 <= 3 * tree.ray_count();
          st.lone_child_property = tree.lone_child_property();
        }
      },
      threads);
  return out;
}

}  // namespace assemblyline
