#include "assemblyline/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "assemblyline/error.hpp"

namespace assemblyline {

DegreeSequence::DegreeSequence(std::vector<std::uint32_t> head, Extension extension)
    : head_(std::move(head)), extension_(extension) {
  require(!head_.empty(), ErrorCode::InvalidArgument, "degree sequence head must be nonempty");
  for (auto m : head_) {
    require(m >= 2, ErrorCode::InvalidArgument, "degree sequence entries must be >= 2");
  }
  if (extension_.kind == ExtensionKind::Constant) {
    extension_.period = 1;
  } else {
    require(extension_.period >= 1 && extension_.period <= head_.size(), ErrorCode::InvalidArgument,
            "periodic extension period must be in [1, head length]");
  }
  m_star_ = *std::max_element(head_.begin(), head_.end());
  std::vector<std::uint32_t> distinct = head_;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  cycle_order_ = 1;
  for (auto m : distinct) {
    cycle_order_ = std::lcm(cycle_order_, static_cast<std::uint64_t>(m));
  }
}

DegreeSequence DegreeSequence::constant(std::uint32_t degree) { return DegreeSequence({degree}); }

std::uint32_t DegreeSequence::degree(std::size_t level) const {
  require(level >= 1, ErrorCode::OutOfRange, "degree levels are 1-indexed");
  if (level <= head_.size()) return head_[level - 1];
  const std::size_t p = extension_.period;
  const std::size_t past = level - head_.size() - 1;
  return head_[head_.size() - p + past % p];
}

nlohmann::json DegreeSequence::to_json() const {
  nlohmann::json ext;
  if (extension_.kind == ExtensionKind::Constant) {
    ext = {{"kind", "constant"}};
  } else {
    ext = {{"kind", "periodic"}, {"period", extension_.period}};
  }
  return {{"head", head_}, {"extension", ext}};
}

DegreeSequence DegreeSequence::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("head") || !j["head"].is_array()) {
    throw_error(ErrorCode::InvalidArgument, "degree sequence JSON needs a \"head\" array");
  }
  std::vector<std::uint32_t> head;
  for (const auto& v : j["head"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 2 ||
        v.get<std::int64_t>() > std::int64_t{1} << 31) {
      throw_error(ErrorCode::InvalidArgument, "degree sequence entries must be integers >= 2");
    }
    head.push_back(v.get<std::uint32_t>());
  }
  Extension ext;
  if (j.contains("extension")) {
    const auto& e = j["extension"];
    const std::string kind = e.value("kind", std::string("constant"));
    if (kind == "constant") {
      ext.kind = ExtensionKind::Constant;
    } else if (kind == "periodic") {
      ext.kind = ExtensionKind::Periodic;
      ext.period = e.value("period", std::size_t{1});
    } else {
      throw_error(ErrorCode::InvalidArgument, "unknown extension kind: " + kind);
    }
  }
  return DegreeSequence(std::move(head), ext);
}

BigInt volume(const DegreeSequence& seq, std::size_t level) {
  BigInt v = 1;
  for (std::size_t l = 1; l <= level; ++l) v *= seq.degree(l);
  return v;
}

Rational resistance_factor(const DegreeSequence& seq, std::size_t level) {
  BigInt num = 1, den = 1;
  for (std::size_t l = 1; l <= level; ++l) {
    num *= seq.degree(l);
    den *= seq.degree(l) - 1;
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational time_scale(const DegreeSequence& seq, std::size_t level) {
  return resistance_factor(seq, level) * Rational(volume(seq, level));
}

double log_of(const BigInt& value) {
  require(sgn(value) > 0, ErrorCode::InvalidArgument, "log of a non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double log_of(const Rational& value) {
  require(sgn(value) > 0, ErrorCode::InvalidArgument, "log of a non-positive rational");
  return log_of(BigInt(value.get_num())) - log_of(BigInt(value.get_den()));
}

namespace {

Rational exact(double n) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), n);
  return q;
}

}  // namespace

LevelInfo level_of(const DegreeSequence& seq, double n) {
  require(std::isfinite(n) && n >= 1.0, ErrorCode::InvalidArgument, "level_of requires n >= 1");
  if (n == 1.0) return {0, 0.0};
  const Rational target = exact(n);
  BigInt v = 1, num = 1, den = 1;
  std::size_t level = 0;
  // n_l >= n  <=>  v_l * num_l >= n * den_l
  while (BigInt(v * num * target.get_den()) < target.get_num() * den) {
    ++level;
    const auto m = seq.degree(level);
    v *= m;
    num *= m;
    den *= m - 1;
  }
  return {level, log_of(v) / std::log(n)};
}

ScaleTable::ScaleTable(const DegreeSequence& seq, std::size_t max_level) {
  volumes_.reserve(max_level + 1);
  BigInt v = 1, num = 1, den = 1;
  for (std::size_t l = 0; l <= max_level; ++l) {
    if (l > 0) {
      const auto m = seq.degree(l);
      v *= m;
      num *= m;
      den *= m - 1;
    }
    Rational r(num, den);
    r.canonicalize();
    volumes_.push_back(v);
    resistances_.push_back(r);
    scales_.push_back(r * Rational(v));
    scale_doubles_.push_back(scales_.back().get_d());
    log_volumes_.push_back(log_of(v));
  }
}

LevelInfo ScaleTable::level_of(double n) const {
  require(std::isfinite(n) && n >= 1.0, ErrorCode::InvalidArgument, "level_of requires n >= 1");
  if (n == 1.0) return {0, 0.0};
  // Doubles narrow the search; the final decision is exact.
  auto it = std::lower_bound(scale_doubles_.begin(), scale_doubles_.end(), n);
  std::size_t level = static_cast<std::size_t>(it - scale_doubles_.begin());
  if (level > 0) --level;
  const Rational target = exact(n);
  while (level < scales_.size() && scales_[level] < target) ++level;
  if (level >= scales_.size()) {
    throw_error(ErrorCode::OutOfRange, "n exceeds the largest tabulated time scale");
  }
  return {level, log_volumes_[level] / std::log(n)};
}

std::size_t ScaleTable::floor_level(double n) const {
  require(std::isfinite(n) && n >= 1.0, ErrorCode::InvalidArgument, "floor_level requires n >= 1");
  const Rational target = exact(n);
  std::size_t level = 0;
  while (level + 1 < scales_.size() && scales_[level + 1] <= target) ++level;
  if (level + 1 >= scales_.size() && scales_.back() <= target) {
    throw_error(ErrorCode::OutOfRange, "n exceeds the largest tabulated time scale");
  }
  return level;
}

}  // namespace assemblyline
