#include "assemblyline/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "assemblyline/designer.hpp"
#include "assemblyline/error.hpp"
#include "assemblyline/gray_chain.hpp"

namespace assemblyline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double varopoulos_carne_speed(double n, double entropy, double eta) {
  require(n >= 1.0, ErrorCode::InvalidArgument, "n must be at least 1");
  require(entropy >= 0.0, ErrorCode::InvalidArgument, "entropy must be nonnegative");
  require(eta >= 1.0, ErrorCode::InvalidArgument, "eta must be at least 1");
  return 4.0 * std::sqrt(n * std::max(entropy, eta));
}

double return_speed_lower(double n, double p, const std::function<double(double)>& lambda_lower) {
  require(p > 0.0 && p <= 1.0, ErrorCode::InvalidArgument, "p must lie in (0, 1]");
  return n * p * lambda_lower(1.0 / p) / 16.0;
}

EntropyTerms ray_tree_entropy_terms(double n, double orbit_size, std::uint32_t m_star) {
  const double m = m_star;
  EntropyTerms t;
  t.support_given_size = 6.0 * std::log(m + 1.0) * orbit_size;
  t.support = t.support_given_size + std::log(n + 1.0);
  t.element_given_size = 5.0 * m * m * m * std::log(m) * orbit_size;
  t.element = t.element_given_size + std::log(n + 1.0);
  return t;
}

OrbitBounds orbit_bounds(const OrbitBoundInputs& in, const LampGroup& lamps) {
  require(in.n >= 1.0, ErrorCode::InvalidArgument, "n must be at least 1");
  require(in.p > 0.0 && in.p <= 1.0, ErrorCode::InvalidArgument, "p must lie in (0, 1]");
  require(in.q >= 1.0, ErrorCode::InvalidArgument, "q must be at least 1");
  OrbitBounds b;
  const double lam = lamps.lambda_lower(1.0 / in.p);
  b.speed_lower = in.n * in.p * lam / 16.0;
  b.entropy_upper = in.entropy_element + in.entropy_support_given_size +
                    2.0 * in.q * (lamps.entropy(in.n / in.q) + std::log(in.n + 1.0));
  b.speed_upper_entropy = 4.0 * std::sqrt(in.n * b.entropy_upper);
  b.speed_upper_tight = 3.0 * lamps.lambda_upper(in.n / in.q) * in.q +
                        12.0 * std::sqrt(in.n * (in.entropy_element + in.entropy_support + in.orbit_size));
  b.entropy_lower = in.n * in.p * in.p * lam * lam / 4096.0;
  return b;
}

CheckReport orbit_bound_preconditions(const OrbitBoundInputs& in, double exact_tail, double exact_orbit_size) {
  CheckReport r;
  r.add(make_check("orbit_bounds.p_at_most_tail", -kInf, in.p, exact_tail, 0.0, {{"n", in.n}}));
  r.add(make_check("orbit_bounds.q_at_least_orbit", exact_orbit_size, in.q, kInf, 0.0, {{"n", in.n}}));
  return r;
}

SpeedBracket speed_bracket(double n, double alpha, std::uint32_t m_star, const LampGroup& lamps) {
  require(n >= 1.0, ErrorCode::InvalidArgument, "n must be at least 1");
  const double m2 = static_cast<double>(m_star) * m_star;
  const double na = std::pow(n, alpha);
  const double scale = std::pow(n, 1.0 - alpha);
  // Between integers the inf/max profiles legitimately cross, so compare at
  // the neighbouring integers only.
  for (const double k : {std::floor(scale), std::ceil(scale)}) {
    if (k >= 1.0 && lamps.lambda_lower(k) > lamps.lambda_upper(k)) {
      throw_error(ErrorCode::InvalidArgument, "lower displacement profile exceeds the upper one");
    }
  }
  SpeedBracket b;
  b.lower = na * lamps.lambda_lower(scale / (500.0 * m2)) / (8000.0 * m2);
  b.upper = 6.0 * na * lamps.lambda_upper(scale) + 48.0 * m2 * std::pow(n, (1.0 + alpha) / 2.0);
  return b;
}

EntropyBracket entropy_bracket(double n, double alpha, std::uint32_t m_star, const LampGroup& lamps) {
  require(n >= 1.0, ErrorCode::InvalidArgument, "n must be at least 1");
  const double m = m_star;
  const double na = std::pow(n, alpha);
  const double scale = std::pow(n, 1.0 - alpha);
  const double lam = lamps.lambda_lower(scale);
  EntropyBracket b;
  b.lower_general = std::pow(n, 2.0 * alpha - 1.0) * lam * lam / (std::ldexp(1.0, 30) * m * m * m * m);
  b.lower_finite = lamps.step_entropy() * na / (500.0 * m * m);
  b.upper = (15.0 * m * m * m * m + 2.0 * lamps.entropy(scale)) * na;
  return b;
}

ConstantBracket explicit_constants(double gamma, double f_n, ConstantSide side) {
  require(f_n > 0.0, ErrorCode::InvalidArgument, "f(n) must be positive");
  ConstantBracket b;
  if (side == ConstantSide::Entropy) {
    b.constant = tracking_constant(gamma);
    const double c = b.constant;
    b.lower_coefficient = std::log(2.0) / (1000.0 * c * c * c);
    b.upper_coefficient = 16.0 * std::pow(c, 4.5);
  } else {
    require(gamma >= 0.75 && gamma < 1.0, ErrorCode::InvalidArgument, "speed side needs gamma in [3/4, 1)");
    b.constant = tracking_constant(2.0 * gamma - 1.0);
    const double c = b.constant;
    b.lower_coefficient = std::ldexp(1.0, -19) * std::pow(c, -3.5);
    b.upper_coefficient = 49.0 * std::pow(c, 2.25);
  }
  b.lower = b.lower_coefficient * f_n;
  b.upper = b.upper_coefficient * f_n;
  return b;
}

CheckReport concavity_check(const std::function<double(double)>& h, double n, std::span<const double> grid,
                            double tolerance) {
  require(n >= 1.0, ErrorCode::InvalidArgument, "n must be at least 1");
  auto phi = [&](double x) { return x * h(n / x); };
  CheckReport r;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double x = grid[i];
      const double y = grid[j];
      require(x > 0.0 && y > 0.0, ErrorCode::InvalidArgument, "concavity grid must be positive");
      const double mid = phi(0.5 * (x + y));
      const double chord = 0.5 * (phi(x) + phi(y));
      const double scale = std::max({1.0, std::abs(mid), std::abs(chord)});
      r.add(make_check("concavity.midpoint", chord, mid, kInf, tolerance * scale, {{"x", x}, {"y", y}}));
    }
  }
  return r;
}

CheckReport verify_sequence(const DegreeSequence& seq, std::span<const std::uint64_t> n_grid) {
  require(!n_grid.empty(), ErrorCode::InvalidArgument, "verification grid must be nonempty");
  const std::uint64_t horizon = *std::max_element(n_grid.begin(), n_grid.end());
  require(horizon <= kMaxVerifyHorizon, ErrorCode::OutOfRange, "verification grid exceeds the DP horizon limit");
  const auto tail = return_tail(seq, horizon);

  CheckReport report;
  report.append(check_return_bounds(seq, tail, n_grid));
  report.append(check_chain_identities(seq, ChainCheckLimits{}, tail));

  std::size_t levels = 1;
  while (time_scale(seq, levels).get_d() < static_cast<double>(horizon)) ++levels;
  const ScaleTable table(seq, levels);
  const std::uint32_t m = seq.m_star();

  const IntegerLamps z;
  const BinaryLamps z2;
  const LampGroup* groups[] = {&z, &z2};
  for (const LampGroup* lamps : groups) {
    const std::string tag = "[" + lamps->name() + "]";
    for (const auto n : n_grid) {
      const double nd = static_cast<double>(n);
      const auto info = table.level_of(nd);
      const double p = tail[n];
      const double q = orbit_size_exact(tail, n);
      const auto terms = ray_tree_entropy_terms(nd, q, m);
      OrbitBoundInputs in;
      in.n = nd;
      in.p = p;
      in.q = q;
      in.orbit_size = q;
      in.entropy_element = terms.element;
      in.entropy_support_given_size = terms.support_given_size;
      in.entropy_support = terms.support;
      const auto orbit = orbit_bounds(in, *lamps);
      const auto speed = speed_bracket(nd, info.alpha, m, *lamps);
      const auto ent = entropy_bracket(nd, info.alpha, m, *lamps);
      const std::vector<std::pair<std::string, double>> inputs = {
          {"n", nd}, {"alpha_n", info.alpha}, {"p", p}, {"q", q}};
      auto add = [&](const std::string& name, double lower, double value, double upper) {
        report.add(make_check(name + tag, lower, value, upper, 0.0, inputs));
      };

      add("orbit_bounds.speed_order", orbit.speed_lower, orbit.speed_upper_tight, kInf);
      add("orbit_bounds.entropy_order", orbit.entropy_lower, orbit.entropy_upper, kInf);
      add("speed_bracket.order", speed.lower, speed.upper, kInf);
      add("entropy_bracket.order", std::max(ent.lower_general, ent.lower_finite), ent.upper, kInf);
      add("speed_bracket.lower_below_exact", speed.lower, orbit.speed_lower, kInf);
      add("speed_bracket.upper_above_exact", -kInf, orbit.speed_upper_tight, speed.upper);
      add("entropy_bracket.lower_general_below_exact", ent.lower_general, orbit.entropy_lower, kInf);
      add("entropy_bracket.lower_finite_below_exact", ent.lower_finite, lamps->step_entropy() * q, kInf);
      add("entropy_bracket.upper_above_exact", -kInf, orbit.entropy_upper, ent.upper);
    }
    std::vector<double> xs;
    for (int i = 0; i < 40; ++i) xs.push_back(std::pow(10.0, 3.0 * i / 39.0));
    auto concave = concavity_check([lamps](double k) { return lamps->entropy(k); }, 1000.0, xs);
    for (auto& c : concave.checks) c.name += tag;
    report.append(concave);
  }
  return report;
}

}  // namespace assemblyline
