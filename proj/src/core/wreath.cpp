#include "assemblyline/wreath.hpp"

#include <algorithm>
#include <cmath>

#include "assemblyline/error.hpp"

namespace assemblyline {

LampConfig normalized(const LampConfig& config) {
  LampConfig out;
  for (const auto& [site, value] : config) {
    if (value != 0) out.emplace(site, value);
  }
  return out;
}

SwsTrajectory sample_sws(const MotherGroup& group, const LampGroup& lamps, std::size_t steps, std::uint64_t seed,
                         std::uint64_t stream) {
  SwsTrajectory t;
  t.word.seed = seed;
  t.word.stream = stream;
  RandomStream rng(seed, stream);
  for (std::size_t i = 0; i < steps; ++i) {
    t.first_switch.push_back(lamps.sample_switch(rng));
    t.word.steps.push_back(group.sample_step(rng));
    t.second_switch.push_back(lamps.sample_switch(rng));
  }
  return t;
}

LampConfig sparse_lamps(const MotherGroup& group, const LampGroup& lamps, const SwsTrajectory& trajectory) {
  LampConfig config;
  InvertedOrbitTracker tracker(group);
  for (std::size_t i = 0; i < trajectory.word.steps.size(); ++i) {
    auto& before = config[tracker.current()];
    before = lamps.compose(before, trajectory.first_switch[i]);
    const auto& after_site = tracker.push(trajectory.word.steps[i]);
    auto& after = config[after_site];
    after = lamps.compose(after, trajectory.second_switch[i]);
  }
  return normalized(config);
}

WreathElement semidirect_multiply(const MotherGroup& group, const LampGroup& lamps, const WreathElement& a,
                                  const WreathElement& b) {
  WreathElement out;
  out.lamps = a.lamps;
  const Automorphism g_inverse = group.inverse(a.group_part);
  for (const auto& [site, value] : b.lamps) {
    // l'(s.g) is nonzero exactly at s = site.g^{-1}.
    auto& slot = out.lamps[group.act(g_inverse, site)];
    slot = lamps.compose(slot, value);
  }
  out.lamps = normalized(out.lamps);
  out.group_part = group.compose(a.group_part, b.group_part);
  return out;
}

WreathElement direct_product_walk(const MotherGroup& group, const LampGroup& lamps, const SwsTrajectory& trajectory) {
  WreathElement x;
  auto lamp_at_root = [](std::int64_t v) {
    WreathElement e;
    if (v != 0) e.lamps.emplace(BoundaryPoint(), v);
    return e;
  };
  for (std::size_t i = 0; i < trajectory.word.steps.size(); ++i) {
    x = semidirect_multiply(group, lamps, x, lamp_at_root(trajectory.first_switch[i]));
    WreathElement step;
    step.group_part = group.element(trajectory.word.steps[i]);
    x = semidirect_multiply(group, lamps, x, step);
    x = semidirect_multiply(group, lamps, x, lamp_at_root(trajectory.second_switch[i]));
  }
  return x;
}

std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash> switch_counts(const MotherGroup& group,
                                                                                   const WalkWord& word) {
  std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash> counts;
  InvertedOrbitTracker tracker(group);
  for (const auto& g : word.steps) {
    ++counts[tracker.current()];
    ++counts[tracker.push(g)];
  }
  return counts;
}

std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash> predicted_switch_counts(
    const std::vector<BoundaryPoint>& inverted_orbit) {
  std::unordered_map<BoundaryPoint, std::uint64_t, BoundaryPointHash> counts;
  if (inverted_orbit.size() < 2) return counts;
  for (const auto& p : inverted_orbit) counts[p] += 2;
  counts[inverted_orbit.front()] -= 1;
  counts[inverted_orbit.back()] -= 1;
  for (auto it = counts.begin(); it != counts.end();) {
    it = it->second == 0 ? counts.erase(it) : std::next(it);
  }
  return counts;
}

std::uint64_t lamp_length_stat(const LampConfig& config, const LampGroup& lamps) {
  std::uint64_t total = 0;
  for (const auto& [site, value] : config) total += lamps.length(value);
  return total;
}

double theoretical_speed_stat(const OccupationMeasure& occupation, const LampGroup& lamps) {
  double total = 0.0;
  for (const auto& [site, count] : occupation.counts()) total += lamps.lambda_lower(static_cast<double>(count));
  return total;
}

std::vector<WalkSummary> sws_walk(const MotherGroup& group, const LampGroup& lamps,
                                  std::span<const std::uint64_t> checkpoints, RandomStream& rng) {
  require(std::is_sorted(checkpoints.begin(), checkpoints.end()), ErrorCode::InvalidArgument,
          "checkpoints must be sorted");
  require(checkpoints.empty() || checkpoints.front() >= 1, ErrorCode::InvalidArgument, "checkpoints must be positive");
  struct Site {
    std::int64_t lamp = 0;
    std::uint64_t visits = 0;
  };
  std::unordered_map<BoundaryPoint, Site, BoundaryPointHash> sites;
  InvertedOrbitTracker tracker(group);
  std::uint64_t lamp_length = 0;
  double theoretical = 0.0;

  auto switch_at = [&](Site& s, std::int64_t v) {
    const std::uint64_t before = lamps.length(s.lamp);
    s.lamp = lamps.compose(s.lamp, v);
    lamp_length = lamp_length - before + lamps.length(s.lamp);
  };
  auto visit = [&](Site& s) {
    theoretical += lamps.lambda_lower(static_cast<double>(s.visits + 1)) -
                   lamps.lambda_lower(static_cast<double>(s.visits));
    ++s.visits;
  };

  Site* current = &sites[BoundaryPoint()];
  visit(*current);
  std::vector<WalkSummary> out;
  std::size_t next = 0;
  const std::uint64_t last = checkpoints.empty() ? 0 : checkpoints.back();
  for (std::uint64_t t = 1; t <= last; ++t) {
    switch_at(*current, lamps.sample_switch(rng));
    const auto& p = tracker.push(group.sample_step(rng));
    current = &sites[p];
    visit(*current);
    switch_at(*current, lamps.sample_switch(rng));
    while (next < checkpoints.size() && checkpoints[next] == t) {
      out.push_back({t, lamp_length, theoretical, sites.size()});
      ++next;
    }
  }
  return out;
}

Regression exponent_regression(std::span<const SeriesPoint> series) {
  require(series.size() >= 4, ErrorCode::InvalidArgument, "regression needs at least 4 points");
  std::vector<double> x, y, var;
  for (const auto& s : series) {
    require(s.mean > 0.0 && s.n > 0.0, ErrorCode::InvalidArgument, "regression needs positive n and means");
    x.push_back(std::log(s.n));
    y.push_back(std::log(s.mean));
    const double rel = s.stderr_ / s.mean;
    var.push_back(rel * rel);
  }
  const double k = static_cast<double>(x.size());
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xbar += x[i] / k;
    ybar += y[i] / k;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
  }
  require(sxx > 0.0, ErrorCode::InvalidArgument, "regression needs distinct n values");
  Regression r;
  r.slope = sxy / sxx;
  r.intercept = ybar - r.slope * xbar;
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = (x[i] - xbar) / sxx;
    v += w * w * var[i];
  }
  r.slope_stderr = std::sqrt(v);
  r.ci_low = r.slope - 1.96 * r.slope_stderr;
  r.ci_high = r.slope + 1.96 * r.slope_stderr;
  return r;
}

}  // namespace assemblyline
