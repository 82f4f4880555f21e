#include "assemblyline/designer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "assemblyline/error.hpp"

namespace assemblyline {

namespace {

constexpr double kRelativeSlack = 1e-9;

double parse_double(std::string_view text) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw_error(ErrorCode::InvalidArgument, "cannot parse number: " + s);
  }
  if (used != s.size()) throw_error(ErrorCode::InvalidArgument, "cannot parse number: " + s);
  return v;
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.5 && gamma < 1.0)) {
    throw_error(ErrorCode::InvalidArgument, "gamma must lie in [1/2, 1)");
  }
}

double relative_slack(double lower, double upper) {
  double scale = 0.0;
  if (std::isfinite(lower)) scale = std::max(scale, std::abs(lower));
  if (std::isfinite(upper)) scale = std::max(scale, std::abs(upper));
  return kRelativeSlack * scale;
}

std::string format_level(std::size_t level) { return std::to_string(level); }

}  // namespace

TargetFunction power_target(double beta, double gamma) {
  TargetFunction f;
  std::ostringstream name;
  name << "pow:" << beta;
  f.name = name.str();
  f.evaluate = [beta](double n) { return std::pow(n, beta); };
  f.gamma = gamma;
  return f;
}

TargetFunction parse_target(std::string_view spec, double gamma) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw_error(ErrorCode::InvalidArgument, "target must look like family:params, got " + std::string(spec));
  }
  const auto family = spec.substr(0, colon);
  const auto params = spec.substr(colon + 1);
  if (family == "pow") {
    auto f = power_target(parse_double(params), gamma);
    f.name = std::string(spec);
    return f;
  }
  if (family == "pow-log") {
    const auto comma = params.find(',');
    if (comma == std::string_view::npos) {
      throw_error(ErrorCode::InvalidArgument, "pow-log needs beta,k");
    }
    const double beta = parse_double(params.substr(0, comma));
    const double k = parse_double(params.substr(comma + 1));
    TargetFunction f;
    f.name = std::string(spec);
    f.evaluate = [beta, k](double n) { return std::pow(n, beta) * std::pow(std::log(M_E * n), k); };
    f.gamma = gamma;
    return f;
  }
  throw_error(ErrorCode::InvalidArgument, "unknown target family: " + std::string(family));
}

TargetFunction speed_target_to_entropy_target(const TargetFunction& speed) {
  TargetFunction f;
  f.name = "(" + speed.name + ")^2/n";
  f.evaluate = [g = speed.evaluate](double n) {
    const double v = g(n);
    return v * v / n;
  };
  f.gamma = 2.0 * speed.gamma - 1.0;
  return f;
}

LipschitzViolation LipschitzReport::worst() const {
  LipschitzViolation best{};
  double excess = -1.0;
  for (const auto& v : violations) {
    const double e = std::max(v.lower / v.ratio, v.ratio / v.upper);
    if (e > excess) {
      excess = e;
      best = v;
    }
  }
  return best;
}

LipschitzReport validate_log_lipschitz(const TargetFunction& f,
                                       std::span<const std::pair<double, double>> grid) {
  require(!grid.empty(), ErrorCode::InvalidArgument, "log-Lipschitz grid must be nonempty");
  LipschitzReport report;
  for (const auto& [a, n] : grid) {
    require(a >= 1.0 && n >= 1.0, ErrorCode::InvalidArgument, "log-Lipschitz grid needs a, n >= 1");
    const double fn = f.evaluate(n);
    const double fan = f.evaluate(a * n);
    if (!(fn > 0.0) || !(fan > 0.0) || !std::isfinite(fn) || !std::isfinite(fan)) {
      throw_error(ErrorCode::InvalidArgument, "target function must be positive and finite");
    }
    const double ratio = fan / fn;
    const double lower = std::sqrt(a);
    const double upper = std::pow(a, f.gamma);
    ++report.pairs_checked;
    if (ratio < lower * (1.0 - kRelativeSlack) || ratio > upper * (1.0 + kRelativeSlack)) {
      report.violations.push_back({a, n, ratio, lower, upper});
    }
  }
  return report;
}

std::vector<std::pair<double, double>> log_spaced_pairs(std::size_t count, double a_max, double n_max) {
  require(count >= 2, ErrorCode::InvalidArgument, "need at least two grid points per axis");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(count * count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = std::exp(std::log(a_max) * static_cast<double>(i) / static_cast<double>(count - 1));
    for (std::size_t j = 0; j < count; ++j) {
      const double n = std::exp(std::log(n_max) * static_cast<double>(j) / static_cast<double>(count - 1));
      pairs.emplace_back(a, n);
    }
  }
  return pairs;
}

std::uint32_t choose_m_star(double gamma) {
  check_gamma(gamma);
  for (std::uint32_t m = 2;; ++m) {
    const double lhs = gamma * (2.0 * std::log(m) - std::log(m - 1.0));
    const double rhs = std::log(static_cast<double>(m));
    if (lhs <= rhs * (1.0 + 1e-12)) return m;
  }
}

double tracking_constant(double gamma) {
  check_gamma(gamma);
  return 3.0 * std::exp(1.0 / (1.0 - gamma));
}

std::pair<DegreeSequence, DesignCertificate> design_sequence(const TargetFunction& f, std::size_t levels) {
  check_gamma(f.gamma);
  require(levels >= 1, ErrorCode::InvalidArgument, "design needs at least one level");
  DesignCertificate cert;
  cert.target = f.name;
  cert.gamma = f.gamma;
  cert.c_gamma = tracking_constant(f.gamma);
  cert.m_star = choose_m_star(f.gamma);

  std::vector<std::uint32_t> head;
  head.reserve(levels);
  Rational scale = 1;
  BigInt vol = 1;
  for (std::size_t level = 0; level <= levels; ++level) {
    DesignStep step;
    step.level = level;
    step.time_scale = scale.get_d();
    step.volume = vol.get_d();
    const double f_here = f.evaluate(step.time_scale);
    step.ratio = f_here / step.volume;
    if (level < levels) {
      // Base case ratio is f(1)/1 = 1, so m_1 = 2.
      const std::uint32_t m = step.ratio <= 1.0 + 1e-12 ? 2u : cert.m_star;
      step.next_degree = m;
      head.push_back(m);
      scale *= Rational(BigInt(m) * m, m - 1);
      vol *= m;
      const double f_next = f.evaluate(scale.get_d());
      step.step_ratio = f_next / f_here / m;
      step.step_lower = 1.0 / std::sqrt(m - 1.0);
      step.step_upper = std::pow(static_cast<double>(m) * m / (m - 1.0), f.gamma) / m;
    }
    cert.trace.push_back(step);
  }
  return {DegreeSequence(std::move(head)), std::move(cert)};
}

CheckReport DesignCertificate::invariant_checks() const {
  CheckReport report;
  const double lo = 1.0 / std::sqrt(m_star - 1.0);
  const double hi = std::pow(2.0, 2.0 * gamma - 1.0);
  for (const auto& step : trace) {
    report.add(make_check("design.level_ratio[" + format_level(step.level) + "]", lo, step.ratio, hi,
                          relative_slack(lo, hi), {{"n_l", step.time_scale}, {"v_l", step.volume}}));
    if (step.next_degree != 0) {
      report.add(make_check("design.step_ratio[" + format_level(step.level) + "]", step.step_lower,
                            step.step_ratio, step.step_upper, relative_slack(step.step_lower, step.step_upper),
                            {{"m", static_cast<double>(step.next_degree)}}));
    }
  }
  return report;
}

nlohmann::json DesignCertificate::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : trace) {
    nlohmann::json row = {{"level", s.level}, {"n_l", s.time_scale}, {"v_l", s.volume}, {"ratio", s.ratio}};
    if (s.next_degree != 0) {
      row["next_degree"] = s.next_degree;
      row["step_ratio"] = s.step_ratio;
      row["step_lower"] = s.step_lower;
      row["step_upper"] = s.step_upper;
    }
    rows.push_back(row);
  }
  return {{"target", target}, {"gamma", gamma}, {"c_gamma", c_gamma}, {"m_star", m_star}, {"trace", rows}};
}

CheckReport verify_tracking(const DegreeSequence& seq, const TargetFunction& f, std::span<const double> n_grid) {
  check_gamma(f.gamma);
  require(!n_grid.empty(), ErrorCode::InvalidArgument, "tracking grid must be nonempty");
  const double n_max = *std::max_element(n_grid.begin(), n_grid.end());
  const std::uint32_t m = std::max(choose_m_star(f.gamma), seq.m_star());
  const double c = tracking_constant(f.gamma);
  const double level_lo = 1.0 / std::sqrt(m - 1.0);
  const double level_hi = std::pow(2.0, 2.0 * f.gamma - 1.0);

  // Enough levels to cover the grid: n_l grows by at least 4 per level.
  std::size_t levels = 1;
  while (std::pow(4.0, static_cast<double>(levels)) < n_max * 4.0) ++levels;
  const ScaleTable table(seq, levels + 1);

  CheckReport report;
  for (std::size_t l = 0; l <= table.max_level(); ++l) {
    const double nl = table.time_scale(l).get_d();
    if (nl > n_max) break;
    const double ratio = f.evaluate(nl) / table.volume(l).get_d();
    report.add(make_check("tracking.level_bracket[" + format_level(l) + "]", level_lo, ratio, level_hi,
                          relative_slack(level_lo, level_hi), {{"n_l", nl}}));
  }
  for (const double n : n_grid) {
    const auto info = table.level_of(n);
    const double fn = f.evaluate(n);
    const double ratio = fn / table.volume(info.level).get_d();
    const std::vector<std::pair<std::string, double>> in = {
        {"n", n}, {"level", static_cast<double>(info.level)}, {"alpha_n", info.alpha}};
    report.add(make_check("tracking.c_gamma_bracket", 1.0 / c, ratio, 2.0 * c, relative_slack(1.0 / c, 2.0 * c), in));
    const double ceil_lo = level_lo / m;
    report.add(make_check("tracking.ceiling_bracket", ceil_lo, ratio, level_hi,
                          relative_slack(ceil_lo, level_hi), in));
    const std::size_t fl = table.floor_level(n);
    const double floor_ratio = fn / table.volume(fl).get_d();
    // Strict upper side: 2 m* is never attained.
    const double floor_hi = 2.0 * m * (1.0 - 1e-15);
    report.add(make_check("tracking.floor_bracket", level_lo, floor_ratio, floor_hi,
                          relative_slack(level_lo, 0.0), in));
  }
  return report;
}

}  // namespace assemblyline
