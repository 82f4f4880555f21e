#pragma once

// The piecewise mother group over a degree sequence: tree automorphisms in
// portrait form, acting on the right on boundary points.
//
// A portrait at depth d is a permutation of the level-(d+1) alphabet plus one
// section per letter. Sections are shared and immutable. Two symbolic forms
// keep portraits small: Identity, and Power(k) = a_{d+1}^k where
//   a_l = < a_{l+1}, s_{l+1}, ..., s_{l+1} >
// and s_l is the full cycle j -> j+1 mod m_l. The group H = <a_1> is cyclic of
// order lcm of the degree values.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "assemblyline/random.hpp"
#include "assemblyline/sequence.hpp"

namespace assemblyline {

// ... w_3 w_2 w_1 with finite support; letters are stored w_1 first and
// trailing zeros are trimmed, so the root o is the empty vector.
class BoundaryPoint {
 public:
  BoundaryPoint() = default;
  explicit BoundaryPoint(std::vector<std::uint32_t> letters);

  // 1-indexed; zero past the support.
  std::uint32_t letter(std::size_t index) const {
    return index - 1 < letters_.size() ? letters_[index - 1] : 0u;
  }
  std::size_t support_length() const noexcept { return letters_.size(); }
  bool is_root() const noexcept { return letters_.empty(); }
  const std::vector<std::uint32_t>& letters() const noexcept { return letters_; }

  bool operator==(const BoundaryPoint&) const = default;
  std::string to_string() const;

 private:
  std::vector<std::uint32_t> letters_;
};

struct BoundaryPointHash {
  std::size_t operator()(const BoundaryPoint& p) const noexcept;
};

// Image table: i maps to images[i].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::uint32_t size);
  // j -> j + shift mod size
  static Permutation cycle_power(std::uint32_t size, std::uint64_t shift);

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }
  bool is_identity() const;
  // First this, then other.
  Permutation then(const Permutation& other) const;
  Permutation inverse() const;
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

struct SectionNode;
using Section = std::shared_ptr<const SectionNode>;  // nullptr is the identity

struct SectionNode {
  enum class Kind { Power, Node };
  Kind kind = Kind::Node;
  std::uint64_t power = 0;        // Kind::Power, in (0, L_H)
  Permutation perm;               // Kind::Node
  std::vector<Section> children;  // Kind::Node; empty means all identity
};

// A tree automorphism given by its root section.
struct Automorphism {
  Section root;
};

// One step of the walk: a root permutation from Sym(m_1) or a_1^k.
struct Generator {
  enum class Kind { Root, Propagating };
  Kind kind = Kind::Root;
  Permutation perm;
  std::uint64_t power = 0;

  bool operator==(const Generator&) const = default;
};

class MotherGroup {
 public:
  explicit MotherGroup(DegreeSequence seq);

  const DegreeSequence& sequence() const noexcept { return seq_; }
  std::uint64_t propagating_order() const noexcept { return order_; }

  Automorphism identity() const { return {}; }
  Automorphism root_permutation(const Permutation& perm) const;
  Automorphism propagating(std::uint64_t power) const;
  Automorphism element(const Generator& g) const;

  BoundaryPoint act(const Automorphism& g, const BoundaryPoint& p) const;
  // Right action: act(compose(g, h), p) == act(h, act(g, p)).
  Automorphism compose(const Automorphism& g, const Automorphism& h) const;
  Automorphism inverse(const Automorphism& g) const;

  // Agreement on every vertex of depth `depth`, and symbolic agreement of all
  // sections hanging below that depth.
  bool equivalent(const Automorphism& g, const Automorphism& h, std::size_t depth) const;

  // Generators act directly on letter vectors (w_1 first, untrimmed).
  void apply(const Generator& g, std::vector<std::uint32_t>& letters) const;
  BoundaryPoint apply(const Generator& g, const BoundaryPoint& p) const;
  Generator inverse(const Generator& g) const;

  // 1/2 uniform on Sym(m_1) (Fisher-Yates), 1/2 a_1^k with k uniform mod L_H.
  Generator sample_step(RandomStream& rng) const;

  // Section of g at the vertex with letters w_1..w_k (w_1 first).
  Section section_at(const Automorphism& g, const std::vector<std::uint32_t>& vertex) const;

  // Depth of the deepest explicit node, for diagnostics.
  std::size_t portrait_depth(const Automorphism& g) const;

 private:
  std::uint32_t alphabet(std::size_t depth) const { return seq_.degree(depth + 1); }
  // lcm of the degrees at levels >= depth + 2: the order of a_{depth+1}.
  std::uint64_t tail_order(std::size_t depth) const;
  Section make_power(std::uint64_t k, std::size_t depth) const;
  // Rooted section s_m^k.
  Section make_rotation(std::uint32_t m, std::uint64_t k) const;
  Section child_of(const Section& s, std::uint32_t letter, std::size_t depth) const;
  Section compose_at(const Section& g, const Section& h, std::size_t depth) const;
  Section inverse_at(const Section& g, std::size_t depth) const;
  bool same_section(const Section& g, const Section& h, std::size_t depth) const;

  DegreeSequence seq_;
  std::uint64_t order_;
  std::vector<std::uint64_t> tail_orders_;
  std::vector<Section> powers_;
  std::map<std::uint32_t, std::vector<Section>> rotations_;
};

}  // namespace assemblyline
