#include "assemblyline/grid.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "assemblyline/error.hpp"

namespace assemblyline {

namespace {

std::uint64_t parse_uint(std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw_error(ErrorCode::InvalidArgument, "cannot parse grid value: " + std::string(text));
  }
  return v;
}

struct PowerTerm {
  std::uint64_t base = 0;
  std::uint64_t exponent = 1;
  bool is_power = false;
};

PowerTerm parse_term(std::string_view text) {
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return {parse_uint(text), 1, false};
  return {parse_uint(text.substr(0, caret)), parse_uint(text.substr(caret + 1)), true};
}

std::uint64_t power(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw_error(ErrorCode::OutOfRange, "grid value overflows 64 bits");
    r *= base;
  }
  return r;
}

std::uint64_t value_of(const PowerTerm& t) { return t.is_power ? power(t.base, t.exponent) : t.base; }

}  // namespace

std::vector<std::uint64_t> parse_grid(std::string_view text) {
  std::vector<std::uint64_t> out;
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto a = parse_term(text.substr(0, colon));
    const auto b = parse_term(text.substr(colon + 1));
    if (!a.is_power || !b.is_power || a.base != b.base) {
      throw_error(ErrorCode::InvalidArgument, "range grids look like B^a:B^b with a common base");
    }
    require(a.exponent <= b.exponent, ErrorCode::InvalidArgument, "grid range is empty");
    for (std::uint64_t e = a.exponent; e <= b.exponent; ++e) out.push_back(power(a.base, e));
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      out.push_back(value_of(parse_term(piece)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  require(!out.empty() && out.front() >= 1, ErrorCode::InvalidArgument, "grid values must be positive");
  return out;
}

}  // namespace assemblyline
