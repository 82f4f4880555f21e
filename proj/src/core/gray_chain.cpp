#include "assemblyline/gray_chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "assemblyline/error.hpp"

namespace assemblyline {

namespace {

std::uint64_t gray_of(std::uint64_t position) { return position ^ (position >> 1); }

Rational toggle_probability(std::uint32_t m, bool bit_set) {
  // Half of the mass goes to each coin side; the letter is uniform on m values.
  Rational p = bit_set ? Rational(1, 2 * m) : Rational(m - 1, 2 * m);
  p.canonicalize();
  return p;
}

BigInt weight_of(const DegreeSequence& seq, std::uint64_t position) {
  BigInt w = 1;
  std::uint64_t b = gray_of(position);
  for (std::size_t level = 1; b != 0; ++level, b >>= 1) {
    if (b & 1u) w *= seq.degree(level) - 1;
  }
  return w;
}

// Kernel in double precision, built directly from the degrees; every entry
// is a correctly rounded quotient of small integers.
struct DoubleKernel {
  std::vector<double> down;
  std::vector<double> stay;
  std::vector<double> up;
};

DoubleKernel double_kernel(const DegreeSequence& seq, std::size_t size) {
  DoubleKernel k;
  k.down.assign(size, 0.0);
  k.stay.assign(size, 0.0);
  k.up.assign(size, 0.0);
  for (std::uint64_t p = 0; p < size; ++p) {
    const Transition t = position_kernel(seq, p);
    k.down[p] = t.down.get_d();
    k.stay[p] = t.stay.get_d();
    k.up[p] = t.up.get_d();
  }
  return k;
}

template <class Scalar>
std::vector<Scalar> tail_dp(const std::vector<Scalar>& down, const std::vector<Scalar>& stay,
                            const std::vector<Scalar>& up, std::size_t horizon) {
  // Positions 0..horizon+1; o absorbs after the first step.
  const std::size_t size = horizon + 2;
  std::vector<Scalar> cur(size + 1, Scalar(0));
  std::vector<Scalar> next(size + 1, Scalar(0));
  std::vector<Scalar> tail(horizon + 1, Scalar(0));
  tail[0] = Scalar(1);
  if (horizon == 0) return tail;
  // Step 1 from o.
  cur[1] = up[0];
  tail[1] = up[0];
  for (std::size_t t = 2; t <= horizon; ++t) {
    // After t-1 steps the mass sits on 1..t-1.
    const std::size_t reach = t;
    next[1] = stay[1] * cur[1] + down[2] * cur[2];
    for (std::size_t p = 2; p <= reach; ++p) {
      next[p] = stay[p] * cur[p] + up[p - 1] * cur[p - 1] + down[p + 1] * cur[p + 1];
    }
    Scalar total(0);
    for (std::size_t p = 1; p <= reach; ++p) total += next[p];
    tail[t] = total;
    std::swap(cur, next);
  }
  return tail;
}

struct Restricted {
  std::vector<Rational> down;
  std::vector<Rational> up;
  std::vector<BigInt> weight;
};

// Chain on [0, top'] with the +1 move at top' turned into a hold.
Restricted restrict_chain(const TruncatedChain& chain, std::uint64_t top) {
  require(top <= chain.top(), ErrorCode::OutOfRange, "restriction beyond the chain top");
  Restricted r;
  r.down.resize(top + 1);
  r.up.resize(top + 1);
  r.weight.resize(top + 1);
  for (std::uint64_t p = 0; p <= top; ++p) {
    const auto& t = chain.kernel(p);
    r.down[p] = t.down;
    r.up[p] = p == top ? Rational(0) : t.up;
    r.weight[p] = chain.weight(p);
  }
  return r;
}

// e_x = E_x[tau_{x-1}], x = 1..top.
std::vector<Rational> passage_times(const Restricted& r) {
  const std::size_t top = r.down.size() - 1;
  std::vector<Rational> e(top + 1);
  for (std::size_t x = top; x >= 1; --x) {
    Rational num = 1;
    if (x < top) num += r.up[x] * e[x + 1];
    e[x] = num / r.down[x];
    e[x].canonicalize();
  }
  return e;
}

std::uint64_t level_top(std::size_t level) {
  require(level < 63, ErrorCode::OutOfRange, "level too large for a position index");
  return std::uint64_t{1} << level;
}

std::string indexed(const char* name, std::size_t level) { return std::string(name) + "[" + std::to_string(level) + "]"; }

}  // namespace

BinaryState::BinaryState(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    require(b <= 1, ErrorCode::InvalidArgument, "binary state entries must be 0 or 1");
  }
  while (!bits_.empty() && bits_.back() == 0) bits_.pop_back();
}

BinaryState BinaryState::from_mask(std::uint64_t mask) {
  std::vector<std::uint8_t> bits;
  for (; mask != 0; mask >>= 1) bits.push_back(static_cast<std::uint8_t>(mask & 1u));
  return BinaryState(std::move(bits));
}

bool BinaryState::bit(std::size_t index) const {
  require(index >= 1, ErrorCode::InvalidArgument, "bit index is 1-based");
  return index <= bits_.size() && bits_[index - 1] != 0;
}

std::uint64_t BinaryState::mask() const {
  require(bits_.size() <= 64, ErrorCode::OutOfRange, "state longer than 64 bits");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

std::uint64_t gray_position(const BinaryState& state) {
  std::uint64_t b = state.mask();
  std::uint64_t p = b;
  for (unsigned shift = 1; shift < 64; shift <<= 1) p ^= p >> shift;
  return p;
}

BinaryState gray_bits(std::uint64_t position, std::size_t length) {
  require(length <= 64, ErrorCode::OutOfRange, "length above 64");
  if (length < 64 && (position >> length) != 0) {
    throw_error(ErrorCode::OutOfRange, "position does not fit in the given length");
  }
  return BinaryState::from_mask(gray_of(position));
}

StepDistribution step_kernel(const DegreeSequence& seq, const BinaryState& state) {
  StepDistribution d;
  const bool even = state.mask() == 0 || std::popcount(state.mask()) % 2 == 0;
  d.toggle_front = toggle_probability(seq.degree(1), state.bit(1));
  d.front_direction = even ? 1 : -1;
  if (state.is_origin()) {
    d.toggle_after_first_nonzero = 0;
    d.after_direction = 0;
  } else {
    std::size_t first = 1;
    while (!state.bit(first)) ++first;
    d.toggle_after_first_nonzero = toggle_probability(seq.degree(first + 1), state.bit(first + 1));
    d.after_direction = even ? -1 : 1;
  }
  d.stay = Rational(1) - d.toggle_front - d.toggle_after_first_nonzero;
  return d;
}

Transition position_kernel(const DegreeSequence& seq, std::uint64_t position) {
  const auto d = step_kernel(seq, BinaryState::from_mask(gray_of(position)));
  Transition t;
  t.down = 0;
  t.up = 0;
  (d.front_direction > 0 ? t.up : t.down) += d.toggle_front;
  if (d.after_direction > 0) t.up += d.toggle_after_first_nonzero;
  if (d.after_direction < 0) t.down += d.toggle_after_first_nonzero;
  t.stay = d.stay;
  return t;
}

TruncatedChain::TruncatedChain(DegreeSequence seq, std::uint64_t top) : seq_(std::move(seq)), top_(top) {
  require(top >= 1, ErrorCode::InvalidArgument, "chain needs at least two positions");
  require(top < (std::uint64_t{1} << 26), ErrorCode::OutOfRange, "chain too large for an exact kernel");
  kernel_.resize(top + 1);
  weights_.resize(top + 1);
  for (std::uint64_t p = 0; p <= top; ++p) {
    kernel_[p] = position_kernel(seq_, p);
    if (p == top) {
      kernel_[p].stay += kernel_[p].up;
      kernel_[p].up = 0;
    }
    weights_[p] = weight_of(seq_, p);
  }
}

TruncatedChain TruncatedChain::at_level(const DegreeSequence& seq, std::size_t level) {
  require(level >= 1, ErrorCode::InvalidArgument, "level-truncated chain needs level >= 1");
  return TruncatedChain(seq, level_top(level) - 1);
}

TruncatedChain TruncatedChain::stopped_at(const DegreeSequence& seq, std::size_t level) {
  return TruncatedChain(seq, level_top(level));
}

Rational TruncatedChain::conductance(std::uint64_t position) const {
  require(position < top_, ErrorCode::OutOfRange, "edge beyond the chain top");
  return Rational(weights_[position]) * kernel_[position].up;
}

bool TruncatedChain::is_reversible() const {
  for (std::uint64_t p = 0; p < top_; ++p) {
    if (Rational(weights_[p]) * kernel_[p].up != Rational(weights_[p + 1]) * kernel_[p + 1].down) return false;
  }
  return true;
}

bool TruncatedChain::rows_sum_to_one() const {
  for (const auto& t : kernel_) {
    if (t.down < 0 || t.stay < 0 || t.up < 0) return false;
    if (t.down + t.stay + t.up != 1) return false;
  }
  return kernel_.front().down == 0;
}

Rational expected_return_time(const TruncatedChain& chain) {
  BigInt total = 0;
  for (std::uint64_t p = 0; p <= chain.top(); ++p) total += chain.weight(p);
  Rational r(total, chain.weight(0));
  r.canonicalize();
  return r;
}

Rational expected_return_time_by_recursion(const TruncatedChain& chain) {
  const auto e = passage_times(restrict_chain(chain, chain.top()));
  Rational r = 1 + chain.kernel(0).up * e[1];
  r.canonicalize();
  return r;
}

Rational hitting_time_by_recursion(const TruncatedChain& chain) {
  const auto e = passage_times(restrict_chain(chain, chain.top()));
  Rational total = 0;
  for (std::size_t x = 1; x < e.size(); ++x) total += e[x];
  return total;
}

Rational hitting_time_top(const TruncatedChain& chain, std::size_t level) {
  const auto r = restrict_chain(chain, level_top(level));
  const std::size_t top = r.down.size() - 1;
  Rational total = 0;
  BigInt suffix = 0;
  for (std::size_t i = top; i >= 1; --i) {
    suffix += r.weight[i];
    total += Rational(suffix) / (Rational(r.weight[i - 1]) * r.up[i - 1]);
  }
  total.canonicalize();
  return total;
}

HittingTimeReadings hitting_time_readings(const TruncatedChain& chain, std::size_t level) {
  HittingTimeReadings h;
  h.standard = hitting_time_top(chain, level);
  const auto r = restrict_chain(chain, level_top(level));
  const std::size_t top = r.down.size() - 1;
  h.printed = 0;
  BigInt strict_suffix = 0;
  for (std::size_t i = top; i >= 1; --i) {
    h.printed += Rational(strict_suffix) / (Rational(r.weight[i]) * r.up[i - 1]);
    strict_suffix += r.weight[i];
  }
  h.printed.canonicalize();
  const auto e = passage_times(r);
  h.recursion = 0;
  for (std::size_t x = 1; x <= top; ++x) h.recursion += e[x];
  h.recursion.canonicalize();
  if (level >= 1) {
    const auto& seq = chain.sequence();
    h.lower_bound = resistance_factor(seq, level - 1) * Rational(volume(seq, level - 1)) *
                    Rational(seq.degree(level) - 1);
    h.lower_bound.canonicalize();
  } else {
    h.lower_bound = 0;
  }
  return h;
}

Rational effective_resistance(const TruncatedChain& chain, std::uint64_t a, std::uint64_t b) {
  require(a <= b && b <= chain.top(), ErrorCode::OutOfRange, "resistance endpoints out of order or range");
  Rational total = 0;
  for (std::uint64_t x = a; x < b; ++x) total += 1 / chain.conductance(x);
  total.canonicalize();
  return total;
}

Rational escape_probability(const TruncatedChain& chain, std::size_t level) {
  const std::uint64_t target = level == 0 ? 1 : level_top(level);
  require(target <= chain.top(), ErrorCode::OutOfRange, "escape target beyond the chain top");
  Rational p = 1 / (Rational(chain.weight(0)) * effective_resistance(chain, 0, target));
  p.canonicalize();
  return p;
}

std::vector<double> hitting_time_survival(const TruncatedChain& chain, std::uint64_t start, std::size_t steps) {
  require(start <= chain.top(), ErrorCode::OutOfRange, "start beyond the chain top");
  const std::size_t size = chain.top() + 1;
  std::vector<double> down(size + 1, 0.0), stay(size + 1, 0.0), up(size + 1, 0.0);
  for (std::uint64_t p = 0; p < size; ++p) {
    down[p] = chain.kernel(p).down.get_d();
    stay[p] = chain.kernel(p).stay.get_d();
    up[p] = chain.kernel(p).up.get_d();
  }
  std::vector<double> cur(size + 1, 0.0), next(size + 1, 0.0);
  std::vector<double> survival(steps + 1, 0.0);
  if (start == 0) return survival;
  cur[start] = 1.0;
  survival[0] = 1.0;
  for (std::size_t t = 1; t <= steps; ++t) {
    for (std::size_t p = 1; p < size; ++p) {
      next[p] = stay[p] * cur[p] + up[p - 1] * cur[p - 1] + down[p + 1] * cur[p + 1];
    }
    double total = 0.0;
    for (std::size_t p = 1; p < size; ++p) total += next[p];
    survival[t] = total;
    std::swap(cur, next);
  }
  return survival;
}

std::vector<double> return_tail(const DegreeSequence& seq, std::size_t horizon) {
  const auto k = double_kernel(seq, horizon + 3);
  return tail_dp<double>(k.down, k.stay, k.up, horizon);
}

std::vector<Rational> return_tail_exact(const DegreeSequence& seq, std::size_t horizon) {
  std::vector<Rational> down(horizon + 3), stay(horizon + 3), up(horizon + 3);
  for (std::uint64_t p = 0; p < horizon + 3; ++p) {
    const auto t = position_kernel(seq, p);
    down[p] = t.down;
    stay[p] = t.stay;
    up[p] = t.up;
  }
  return tail_dp<Rational>(down, stay, up, horizon);
}

double orbit_size_exact(std::span<const double> tail, std::size_t n) {
  require(n < tail.size(), ErrorCode::OutOfRange, "orbit size beyond the tail horizon");
  double s = 0.0;
  for (std::size_t i = 0; i <= n; ++i) s += tail[i];
  return s;
}

Rational orbit_size_exact(std::span<const Rational> tail, std::size_t n) {
  require(n < tail.size(), ErrorCode::OutOfRange, "orbit size beyond the tail horizon");
  Rational s = 0;
  for (std::size_t i = 0; i <= n; ++i) s += tail[i];
  return s;
}

CheckReport check_return_bounds(const DegreeSequence& seq, std::span<const double> tail,
                                std::span<const std::uint64_t> n_grid) {
  require(!tail.empty(), ErrorCode::InvalidArgument, "empty tail");
  const std::size_t horizon = tail.size() - 1;
  std::vector<double> partial(tail.size());
  double s = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    s += tail[i];
    partial[i] = s;
  }
  std::size_t levels = 1;
  while (time_scale(seq, levels).get_d() < static_cast<double>(horizon) + 1.0) ++levels;
  const ScaleTable table(seq, levels + 1);
  const double m = seq.m_star();

  CheckReport report;
  for (const auto n : n_grid) {
    require(n >= 1 && n <= horizon, ErrorCode::OutOfRange, "grid point outside the tail horizon");
    const auto info = table.level_of(static_cast<double>(n));
    const double nd = static_cast<double>(n);
    const double n_alpha = table.volume(info.level).get_d();
    const std::vector<std::pair<std::string, double>> in = {{"n", nd}, {"alpha_n", info.alpha}};
    report.add(make_check("return_tail.lower", n_alpha / nd / (500.0 * m * m), tail[n],
                          std::numeric_limits<double>::infinity(), 0.0, in));
    report.add(make_check("return_tail.partial_sum_upper", -std::numeric_limits<double>::infinity(), partial[n],
                          2.0 * n_alpha, 0.0, in));
  }
  for (std::size_t l = 1; l <= table.max_level(); ++l) {
    const Rational nl = table.time_scale(l);
    const BigInt cut = nl.get_num() / nl.get_den();
    if (cut > horizon) break;
    const std::size_t c = cut.get_ui();
    report.add(make_check(indexed("return_tail.truncation", l), -std::numeric_limits<double>::infinity(),
                          partial[c], 2.0 * table.volume(l).get_d(), 0.0, {{"n_l", nl.get_d()}}));
  }
  return report;
}

CheckReport check_chain_identities(const DegreeSequence& seq, const ChainCheckLimits& limits,
                                   std::span<const double> tail) {
  CheckReport report;
  const std::size_t max_level =
      std::max({limits.return_time_levels, limits.hitting_levels, limits.resistance_levels});
  const double m = seq.m_star();
  const ScaleTable table(seq, max_level + 1);
  const double inf = std::numeric_limits<double>::infinity();

  for (std::size_t l = 1; l <= max_level; ++l) {
    if (l <= limits.return_time_levels) {
      const auto level_chain = TruncatedChain::at_level(seq, l);
      auto c = make_check(indexed("chain.reversible", l), 1.0, 1.0, 1.0);
      c.exact_ok = level_chain.is_reversible() && level_chain.rows_sum_to_one();
      report.add(c);
      const Rational v = table.volume(l);
      const Rational by_weights = expected_return_time(level_chain);
      const Rational by_recursion = expected_return_time_by_recursion(level_chain);
      auto e = make_check(indexed("chain.expected_return_time", l), v.get_d(), by_weights.get_d(), v.get_d(), 0.0,
                          {{"recursion", by_recursion.get_d()}});
      e.exact_ok = by_weights == v && by_recursion == v;
      report.add(e);
    }

    const auto stopped = TruncatedChain::stopped_at(seq, l);
    if (l <= limits.resistance_levels) {
      const Rational res = effective_resistance(stopped, 0, stopped.top());
      const Rational lo = table.resistance(l);
      const Rational hi = 2 * m * table.resistance(l);
      auto c = make_check(indexed("chain.resistance", l), lo.get_d(), res.get_d(), hi.get_d());
      c.exact_ok = lo <= res && res <= hi;
      report.add(c);

      const Rational esc = escape_probability(stopped, l);
      const Rational esc_lo = 1 / hi;
      auto e = make_check(indexed("chain.escape_probability", l), esc_lo.get_d(), esc.get_d(), inf);
      e.exact_ok = esc >= esc_lo;
      report.add(e);
    }
    if (l > limits.hitting_levels) continue;
    const auto h = hitting_time_readings(stopped, l);
    {
      auto c = make_check(indexed("chain.hitting_time_formula", l), h.recursion.get_d(), h.standard.get_d(),
                          h.recursion.get_d(), 0.0, {{"printed_reading", h.printed.get_d()}});
      c.exact_ok = h.standard == h.recursion;
      report.add(c);
    }
    {
      auto c = make_check(indexed("chain.hitting_time_lower", l), h.lower_bound.get_d(), h.standard.get_d(), inf);
      c.exact_ok = h.standard >= h.lower_bound;
      report.add(c);
    }
    {
      // T' from the top of the graph stopped at 2^l, past E T' / 4.
      const Rational expected = h.recursion;
      const BigInt floor_quarter = (expected.get_num() / (4 * expected.get_den()));
      const std::size_t threshold = floor_quarter.get_ui();
      const auto survival = hitting_time_survival(stopped, stopped.top(), threshold);
      report.add(make_check(indexed("chain.hitting_tail", l), 1.0 / 31.0, survival[threshold], inf, 0.0,
                            {{"expected_hitting_time", expected.get_d()}}));
    }
    {
      const Rational scale = table.time_scale(l - 1);
      const BigInt cut = scale.get_num() / (4 * scale.get_den());
      if (cut < tail.size()) {
        const double lo = 1.0 / (62.0 * m * table.resistance(l).get_d());
        report.add(make_check(indexed("chain.return_tail_at_scale", l), lo, tail[cut.get_ui()], inf, 0.0,
                              {{"cut", cut.get_d()}}));
      }
    }
  }
  return report;
}

}  // namespace assemblyline
