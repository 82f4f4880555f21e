#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace assemblyline {

// One inequality lower <= value <= upper, judged with an additive slack.
// Unused sides are +-infinity. Exact-input checks use zero slack; Monte
// Carlo checks use a multiple of the standard error.
struct BoundCheck {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double lower = -std::numeric_limits<double>::infinity();
  double value = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double slack = 0.0;
  // Cleared when an exact (rational) comparison failed; the doubles above
  // are then only a display of the values.
  bool exact_ok = true;

  bool passed() const { return exact_ok && lower - slack <= value && value <= upper + slack; }
  // Distance to the nearest violated side; negative when the check fails.
  double margin() const;

  nlohmann::json to_json() const;
};

BoundCheck make_check(std::string name, double lower, double value, double upper,
                      double slack = 0.0,
                      std::vector<std::pair<std::string, double>> inputs = {});

struct CheckReport {
  std::vector<BoundCheck> checks;

  bool passed() const;
  std::size_t failures() const;
  // One entry per check name: the instance with the smallest margin, with
  // the number of collapsed instances recorded as input "count".
  CheckReport summarized() const;
  void add(BoundCheck check) { checks.push_back(std::move(check)); }
  void append(const CheckReport& other);
  nlohmann::json to_json() const;
};

}  // namespace assemblyline
