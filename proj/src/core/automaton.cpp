#include "assemblyline/automaton.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "assemblyline/error.hpp"

namespace assemblyline {

namespace {

void trim(std::vector<std::uint32_t>& letters) {
  while (!letters.empty() && letters.back() == 0) letters.pop_back();
}

}  // namespace

BoundaryPoint::BoundaryPoint(std::vector<std::uint32_t> letters) : letters_(std::move(letters)) { trim(letters_); }

std::string BoundaryPoint::to_string() const {
  if (letters_.empty()) return "o";
  std::ostringstream out;
  // Printed left-infinite: highest index first.
  for (std::size_t i = letters_.size(); i-- > 0;) {
    out << letters_[i];
    if (i != 0) out << '.';
  }
  return out.str();
}

std::size_t BoundaryPointHash::operator()(const BoundaryPoint& p) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto x : p.letters()) {
    h ^= x + 0x9e3779b97f4a7c15ull;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (const auto x : images_) {
    require(x < images_.size() && !seen[x], ErrorCode::InvalidArgument, "not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::uint32_t size) {
  std::vector<std::uint32_t> images(size);
  std::iota(images.begin(), images.end(), 0u);
  return Permutation(std::move(images));
}

Permutation Permutation::cycle_power(std::uint32_t size, std::uint64_t shift) {
  std::vector<std::uint32_t> images(size);
  const auto s = static_cast<std::uint32_t>(shift % size);
  for (std::uint32_t j = 0; j < size; ++j) images[j] = (j + s) % size;
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::then(const Permutation& other) const {
  require(size() == other.size(), ErrorCode::LevelMismatch, "permutations of different alphabets");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = other.images_[images_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::uint32_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = i;
  return r;
}

MotherGroup::MotherGroup(DegreeSequence seq) : seq_(std::move(seq)), order_(seq_.cycle_order()) {
  // lcm of the degrees at levels >= d + 2; constant once d + 2 passes the head.
  const std::size_t horizon = seq_.head().size() + seq_.extension().period + 1;
  tail_orders_.assign(horizon + 1, 1);
  for (std::size_t d = horizon + 1; d-- > 0;) {
    std::uint64_t l = 1;
    for (std::size_t level = d + 2; level <= d + 2 + horizon; ++level) {
      l = std::lcm(l, std::uint64_t{seq_.degree(level)});
    }
    tail_orders_[d] = l;
  }
  if (order_ <= 4096) {
    powers_.resize(order_);
    for (std::uint64_t k = 1; k < order_; ++k) {
      auto node = std::make_shared<SectionNode>();
      node->kind = SectionNode::Kind::Power;
      node->power = k;
      powers_[k] = std::move(node);
    }
  }
  std::vector<std::uint32_t> values;
  for (std::size_t level = 1; level <= horizon + 1; ++level) values.push_back(seq_.degree(level));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (const auto m : values) {
    auto& row = rotations_[m];
    row.resize(m);
    for (std::uint32_t k = 1; k < m; ++k) {
      auto node = std::make_shared<SectionNode>();
      node->perm = Permutation::cycle_power(m, k);
      row[k] = std::move(node);
    }
  }
}

std::uint64_t MotherGroup::tail_order(std::size_t depth) const {
  return depth < tail_orders_.size() ? tail_orders_[depth] : tail_orders_.back();
}

Section MotherGroup::make_power(std::uint64_t k, std::size_t depth) const {
  k %= order_;
  if (k % tail_order(depth) == 0) return nullptr;
  if (!powers_.empty()) return powers_[k];
  auto node = std::make_shared<SectionNode>();
  node->kind = SectionNode::Kind::Power;
  node->power = k;
  return node;
}

Section MotherGroup::make_rotation(std::uint32_t m, std::uint64_t k) const {
  const auto r = static_cast<std::uint32_t>(k % m);
  if (r == 0) return nullptr;
  return rotations_.at(m)[r];
}

Automorphism MotherGroup::root_permutation(const Permutation& perm) const {
  require(perm.size() == alphabet(0), ErrorCode::LevelMismatch, "root permutation has the wrong alphabet size");
  if (perm.is_identity()) return {};
  auto node = std::make_shared<SectionNode>();
  node->perm = perm;
  return {std::move(node)};
}

Automorphism MotherGroup::propagating(std::uint64_t power) const { return {make_power(power, 0)}; }

Automorphism MotherGroup::element(const Generator& g) const {
  return g.kind == Generator::Kind::Root ? root_permutation(g.perm) : propagating(g.power);
}

Section MotherGroup::child_of(const Section& s, std::uint32_t letter, std::size_t depth) const {
  if (!s) return nullptr;
  if (s->kind == SectionNode::Kind::Power) {
    if (letter == 0) return s;
    return make_rotation(alphabet(depth + 1), s->power);
  }
  if (s->children.empty()) return nullptr;
  return s->children[letter];
}

BoundaryPoint MotherGroup::act(const Automorphism& g, const BoundaryPoint& p) const {
  std::vector<std::uint32_t> letters = p.letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] >= alphabet(i)) throw_error(ErrorCode::LevelMismatch, "letter outside its level alphabet");
  }
  Section s = g.root;
  std::size_t depth = 0;
  while (s) {
    if (s->kind == SectionNode::Kind::Power) {
      if (depth >= letters.size()) break;
      if (letters[depth] == 0) {
        ++depth;
        continue;
      }
      if (letters.size() <= depth + 1) letters.resize(depth + 2, 0);
      const std::uint32_t m = alphabet(depth + 1);
      letters[depth + 1] = static_cast<std::uint32_t>((letters[depth + 1] + s->power) % m);
      break;
    }
    if (letters.size() <= depth) letters.resize(depth + 1, 0);
    const std::uint32_t x = letters[depth];
    letters[depth] = s->perm(x);
    s = s->children.empty() ? nullptr : s->children[x];
    ++depth;
  }
  return BoundaryPoint(std::move(letters));
}

Section MotherGroup::compose_at(const Section& g, const Section& h, std::size_t depth) const {
  if (!g) return h;
  if (!h) return g;
  if (g->kind == SectionNode::Kind::Power && h->kind == SectionNode::Kind::Power) {
    return make_power(g->power + h->power, depth);
  }
  const std::uint32_t m = alphabet(depth);
  const bool g_node = g->kind == SectionNode::Kind::Node;
  const bool h_node = h->kind == SectionNode::Kind::Node;
  auto node = std::make_shared<SectionNode>();
  if (g_node && h_node) {
    node->perm = g->perm.then(h->perm);
  } else if (g_node) {
    node->perm = g->perm;
  } else if (h_node) {
    node->perm = h->perm;
  } else {
    node->perm = Permutation::identity(m);
  }
  bool any_child = false;
  std::vector<Section> children(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint32_t gi = g_node ? g->perm(i) : i;
    children[i] = compose_at(child_of(g, i, depth), child_of(h, gi, depth), depth + 1);
    any_child = any_child || children[i] != nullptr;
  }
  if (!any_child && node->perm.is_identity()) return nullptr;
  if (any_child) node->children = std::move(children);
  return node;
}

Automorphism MotherGroup::compose(const Automorphism& g, const Automorphism& h) const {
  return {compose_at(g.root, h.root, 0)};
}

Section MotherGroup::inverse_at(const Section& g, std::size_t depth) const {
  if (!g) return nullptr;
  if (g->kind == SectionNode::Kind::Power) return make_power(order_ - g->power, depth);
  auto node = std::make_shared<SectionNode>();
  node->perm = g->perm.inverse();
  if (!g->children.empty()) {
    const std::uint32_t m = alphabet(depth);
    node->children.resize(m);
    for (std::uint32_t y = 0; y < m; ++y) node->children[y] = inverse_at(g->children[node->perm(y)], depth + 1);
  }
  return node;
}

Automorphism MotherGroup::inverse(const Automorphism& g) const { return {inverse_at(g.root, 0)}; }

bool MotherGroup::same_section(const Section& g, const Section& h, std::size_t depth) const {
  if (g == h) return true;
  const bool g_power = g && g->kind == SectionNode::Kind::Power;
  const bool h_power = h && h->kind == SectionNode::Kind::Power;
  if (g_power && h_power) return g->power % tail_order(depth) == h->power % tail_order(depth);
  if (!g && h_power) return h->power % tail_order(depth) == 0;
  if (!h && g_power) return g->power % tail_order(depth) == 0;
  const std::uint32_t m = alphabet(depth);
  auto perm_of = [&](const Section& s, std::uint32_t i) {
    return s && s->kind == SectionNode::Kind::Node ? s->perm(i) : i;
  };
  for (std::uint32_t i = 0; i < m; ++i) {
    if (perm_of(g, i) != perm_of(h, i)) return false;
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    if (!same_section(child_of(g, i, depth), child_of(h, i, depth), depth + 1)) return false;
  }
  return true;
}

bool MotherGroup::equivalent(const Automorphism& g, const Automorphism& h, std::size_t depth) const {
  // Agreement on all vertices of depth D means the portraits carry the same
  // permutation at every vertex above D.
  std::function<bool(const Section&, const Section&, std::size_t)> walk = [&](const Section& a, const Section& b,
                                                                                std::size_t d) {
    if (d == depth) return same_section(a, b, d);
    if (a == b) return true;
    const std::uint32_t m = alphabet(d);
    auto perm_of = [&](const Section& s, std::uint32_t i) {
      return s && s->kind == SectionNode::Kind::Node ? s->perm(i) : i;
    };
    for (std::uint32_t i = 0; i < m; ++i) {
      if (perm_of(a, i) != perm_of(b, i)) return false;
    }
    for (std::uint32_t i = 0; i < m; ++i) {
      if (!walk(child_of(a, i, d), child_of(b, i, d), d + 1)) return false;
    }
    return true;
  };
  return walk(g.root, h.root, 0);
}

void MotherGroup::apply(const Generator& g, std::vector<std::uint32_t>& letters) const {
  if (g.kind == Generator::Kind::Root) {
    if (letters.empty()) letters.push_back(0);
    letters[0] = g.perm(letters[0]);
  } else {
    std::size_t i = 0;
    while (i < letters.size() && letters[i] == 0) ++i;
    if (i == letters.size()) return;
    if (letters.size() <= i + 1) letters.resize(i + 2, 0);
    const std::uint32_t m = alphabet(i + 1);
    letters[i + 1] = static_cast<std::uint32_t>((letters[i + 1] + g.power) % m);
  }
  trim(letters);
}

BoundaryPoint MotherGroup::apply(const Generator& g, const BoundaryPoint& p) const {
  std::vector<std::uint32_t> letters = p.letters();
  apply(g, letters);
  return BoundaryPoint(std::move(letters));
}

Generator MotherGroup::inverse(const Generator& g) const {
  Generator r = g;
  if (g.kind == Generator::Kind::Root) {
    r.perm = g.perm.inverse();
  } else {
    r.power = (order_ - g.power % order_) % order_;
  }
  return r;
}

Generator MotherGroup::sample_step(RandomStream& rng) const {
  Generator g;
  if (rng.coin()) {
    const std::uint32_t m = alphabet(0);
    std::vector<std::uint32_t> images(m);
    std::iota(images.begin(), images.end(), 0u);
    for (std::uint32_t i = m - 1; i > 0; --i) {
      const auto j = static_cast<std::uint32_t>(rng.uniform_below(i + 1));
      std::swap(images[i], images[j]);
    }
    g.kind = Generator::Kind::Root;
    g.perm = Permutation(std::move(images));
  } else {
    g.kind = Generator::Kind::Propagating;
    g.power = rng.uniform_below(order_);
  }
  return g;
}

Section MotherGroup::section_at(const Automorphism& g, const std::vector<std::uint32_t>& vertex) const {
  Section s = g.root;
  for (std::size_t d = 0; d < vertex.size(); ++d) {
    require(vertex[d] < alphabet(d), ErrorCode::LevelMismatch, "vertex letter outside its level alphabet");
    s = child_of(s, vertex[d], d);
  }
  return s;
}

std::size_t MotherGroup::portrait_depth(const Automorphism& g) const {
  std::function<std::size_t(const Section&)> depth_of = [&](const Section& s) -> std::size_t {
    if (!s || s->kind == SectionNode::Kind::Power) return 0;
    std::size_t best = 0;
    for (const auto& c : s->children) best = std::max(best, depth_of(c));
    return best + 1;
  };
  return depth_of(g.root);
}

}  // namespace assemblyline
