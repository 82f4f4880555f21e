#pragma once

// The projected assembly-line chain. A state is the 0/1 pattern b_l = 1(w_l > 0)
// of a boundary word; the reflected Gray code orders these patterns so the
// chain only moves to nearest neighbours on {0, 1, 2, ...}.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "assemblyline/check.hpp"
#include "assemblyline/sequence.hpp"

namespace assemblyline {

// Bits b_1, b_2, ... stored front first; trailing zeros are trimmed.
class BinaryState {
 public:
  BinaryState() = default;
  explicit BinaryState(std::vector<std::uint8_t> bits);
  static BinaryState from_mask(std::uint64_t mask);

  // 1-indexed; zero past the stored length.
  bool bit(std::size_t index) const;
  std::size_t length() const noexcept { return bits_.size(); }
  bool is_origin() const noexcept { return bits_.empty(); }
  std::uint64_t mask() const;

  bool operator==(const BinaryState&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Position bits are the suffix parities b_i + b_{i+1} + ... mod 2.
std::uint64_t gray_position(const BinaryState& state);
// Inverse of gray_position for positions below 2^length.
BinaryState gray_bits(std::uint64_t position, std::size_t length);

// One step from a state: hold, toggle b_1 (heads), or toggle the bit after
// the first nonzero bit (tails). Directions are +-1 in Gray order.
struct StepDistribution {
  Rational stay;
  Rational toggle_front;
  Rational toggle_after_first_nonzero;
  int front_direction = 0;
  int after_direction = 0;  // 0 at the origin, where tails is a no-op
};

StepDistribution step_kernel(const DegreeSequence& seq, const BinaryState& state);

struct Transition {
  Rational down;
  Rational stay;
  Rational up;
};

// Nearest-neighbour chain on positions 0..top; the +1 move at top is turned
// into a hold. Level-L truncation (all strings of length <= L) has
// top = 2^L - 1; the graph stopped at 2^l has top = 2^l.
class TruncatedChain {
 public:
  TruncatedChain(DegreeSequence seq, std::uint64_t top);
  static TruncatedChain at_level(const DegreeSequence& seq, std::size_t level);
  static TruncatedChain stopped_at(const DegreeSequence& seq, std::size_t level);

  const DegreeSequence& sequence() const noexcept { return seq_; }
  std::uint64_t top() const noexcept { return top_; }
  const Transition& kernel(std::uint64_t position) const { return kernel_.at(position); }
  // pi(b) = prod (m_i - 1)^{b_i}
  const BigInt& weight(std::uint64_t position) const { return weights_.at(position); }
  // pi(x) P(x, x+1) for the edge {x, x+1}.
  Rational conductance(std::uint64_t position) const;

  bool is_reversible() const;
  bool rows_sum_to_one() const;

 private:
  DegreeSequence seq_;
  std::uint64_t top_;
  std::vector<Transition> kernel_;
  std::vector<BigInt> weights_;
};

// Kernel of the untruncated chain at a single position.
Transition position_kernel(const DegreeSequence& seq, std::uint64_t position);

// sum pi / pi(o).
Rational expected_return_time(const TruncatedChain& chain);
// 1 + P(o,1) E_1[tau_o], with E_1[tau_o] from the backward recursion.
Rational expected_return_time_by_recursion(const TruncatedChain& chain);

// E_top[tau_o] by the backward recursion e_x = (1 + P(x,x+1) e_{x+1}) / P(x,x-1).
Rational hitting_time_by_recursion(const TruncatedChain& chain);

// Two readings of the birth-and-death closed form on the graph stopped at 2^l:
//   standard: sum_{i=1}^{N} (sum_{j>=i} pi_j) / (pi_{i-1} P(i-1,i))
//   printed:  sum_{i=1}^{N} (sum_{j>i}  pi_j) / (pi_i P(i-1,i))
struct HittingTimeReadings {
  Rational standard;
  Rational printed;
  Rational recursion;
  Rational lower_bound;  // r_{l-1} v_{l-1} (m_l - 1)
};

// Requires 2^level <= chain.top(); uses the chain restricted to [0, 2^level].
Rational hitting_time_top(const TruncatedChain& chain, std::size_t level);
HittingTimeReadings hitting_time_readings(const TruncatedChain& chain, std::size_t level);

// Series resistance between positions a <= b.
Rational effective_resistance(const TruncatedChain& chain, std::uint64_t a, std::uint64_t b);

// P_o(hit 2^level before returning to o) = 1 / (pi(o) res(o, 2^level)).
Rational escape_probability(const TruncatedChain& chain, std::size_t level);

// P(T' > t) for t = 0..steps where T' is the hitting time of o from `start`.
std::vector<double> hitting_time_survival(const TruncatedChain& chain, std::uint64_t start, std::size_t steps);

// P(T > i) for i = 0..horizon, T the first return time to o (holds at o count
// as returns).
std::vector<double> return_tail(const DegreeSequence& seq, std::size_t horizon);
std::vector<Rational> return_tail_exact(const DegreeSequence& seq, std::size_t horizon);

// E|Q_n| = sum_{i=0}^{n} P(T > i).
double orbit_size_exact(std::span<const double> tail, std::size_t n);
Rational orbit_size_exact(std::span<const Rational> tail, std::size_t n);

// Pointwise return-probability sandwich for every n in n_grid, plus the truncation
// bound sum_{i <= v_l r_l} P(T > i) <= 2 v_l for levels inside the tail.
CheckReport check_return_bounds(const DegreeSequence& seq, std::span<const double> tail,
                                std::span<const std::uint64_t> n_grid);

struct ChainCheckLimits {
  std::size_t return_time_levels = 10;  // reversibility and E T' = v_l
  std::size_t hitting_levels = 8;       // hitting-time formula, its lower bound, P(T' > E T'/4)
  std::size_t resistance_levels = 12;   // resistance sandwich and escape probability
};

// Exact chain identities: reversibility, E T' = v_l, hitting-time formula
// against the recursion and its lower bound, resistance sandwich, escape
// probability bound, P(T' > E T'/4) >= 1/31 and, where the tail reaches,
// P(T > r_{l-1} v_{l-1} / 4) >= 1/(62 m* r_l).
CheckReport check_chain_identities(const DegreeSequence& seq, const ChainCheckLimits& limits,
                                   std::span<const double> tail);

}  // namespace assemblyline
