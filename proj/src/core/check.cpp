#include "assemblyline/check.hpp"

#include <algorithm>
#include <cmath>

namespace assemblyline {

double BoundCheck::margin() const {
  const double low = std::isinf(lower) ? std::numeric_limits<double>::infinity() : value - (lower - slack);
  const double high = std::isinf(upper) ? std::numeric_limits<double>::infinity() : (upper + slack) - value;
  return std::min(low, high);
}

nlohmann::json BoundCheck::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  auto finite_or_null = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return nullptr;
  };
  j["lower"] = finite_or_null(lower);
  j["value"] = finite_or_null(value);
  j["upper"] = finite_or_null(upper);
  j["slack"] = slack;
  j["margin"] = finite_or_null(margin());
  if (!exact_ok) j["exact_ok"] = false;
  j["verdict"] = passed() ? "pass" : "fail";
  if (!inputs.empty()) {
    nlohmann::json in = nlohmann::json::object();
    for (const auto& [key, v] : inputs) in[key] = finite_or_null(v);
    j["inputs"] = in;
  }
  return j;
}

BoundCheck make_check(std::string name, double lower, double value, double upper, double slack,
                      std::vector<std::pair<std::string, double>> inputs) {
  BoundCheck c;
  c.name = std::move(name);
  c.lower = lower;
  c.value = value;
  c.upper = upper;
  c.slack = slack;
  c.inputs = std::move(inputs);
  return c;
}

bool CheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed(); });
}

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.passed(); }));
}

CheckReport CheckReport::summarized() const {
  CheckReport out;
  std::vector<std::size_t> counts;
  for (const auto& c : checks) {
    auto it = std::find_if(out.checks.begin(), out.checks.end(),
                           [&](const BoundCheck& o) { return o.name == c.name; });
    if (it == out.checks.end()) {
      out.checks.push_back(c);
      counts.push_back(1);
      continue;
    }
    const auto idx = static_cast<std::size_t>(it - out.checks.begin());
    ++counts[idx];
    const bool replace = (!c.passed() && it->passed()) || (c.passed() == it->passed() && c.margin() < it->margin());
    if (replace) *it = c;
  }
  for (std::size_t i = 0; i < out.checks.size(); ++i) {
    out.checks[i].inputs.emplace_back("count", static_cast<double>(counts[i]));
  }
  return out;
}

void CheckReport::append(const CheckReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  return {{"passed", passed()}, {"failures", failures()}, {"checks", arr}};
}

}  // namespace assemblyline
