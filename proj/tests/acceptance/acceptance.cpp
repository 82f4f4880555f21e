#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "assemblyline/bounds.hpp"
#include "assemblyline/designer.hpp"
#include "assemblyline/experiments.hpp"
#include "assemblyline/gray_chain.hpp"
#include "assemblyline/orbit.hpp"
#include "assemblyline/random.hpp"
#include "assemblyline/ray_tree.hpp"
#include "assemblyline/wreath.hpp"

using namespace assemblyline;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Named {
  std::string name;
  DegreeSequence seq;
};

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail, double seconds) {
  std::printf("[%s] %2d %-28s %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  report(id, title, ok, detail, dt.count());
}

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

// Count of checks, failures and the first failing name.
std::string describe(const CheckReport& r) {
  std::string s = fmt("%zu checks, %zu failed", r.checks.size(), r.failures());
  for (const auto& c : r.checks) {
    if (!c.passed()) {
      s += " (first: " + c.name + fmt(" value %.6g in [%.6g, %.6g])", c.value, c.lower, c.upper);
      break;
    }
  }
  return s;
}

CheckReport filter(const CheckReport& r, const std::function<bool(const std::string&)>& keep) {
  CheckReport out;
  for (const auto& c : r.checks) {
    if (keep(c.name)) out.add(c);
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

std::vector<std::uint64_t> powers_of_two(int lo, int hi) {
  std::vector<std::uint64_t> v;
  for (int e = lo; e <= hi; ++e) v.push_back(std::uint64_t{1} << e);
  return v;
}

}  // namespace

int main() {
  const auto setup_start = std::chrono::steady_clock::now();
  const auto designed = design_sequence(parse_target("pow:0.6", 0.65), 24).first;
  const std::vector<Named> sequences = {
      {"m=2", DegreeSequence::constant(2)}, {"m=4", DegreeSequence::constant(4)}, {"designed", designed}};
  constexpr std::size_t kTailHorizon = 100000;
  std::vector<std::vector<double>> tails;
  std::vector<CheckReport> chain_reports;
  for (const auto& s : sequences) {
    tails.push_back(return_tail(s.seq, kTailHorizon));
    chain_reports.push_back(check_chain_identities(s.seq, ChainCheckLimits{}, tails.back()));
  }
  const std::chrono::duration<double> setup = std::chrono::steady_clock::now() - setup_start;
  std::printf("exact return tails to %zu and chain checks for 3 sequences: %.1f s\n", kTailHorizon, setup.count());

  run(1, "gray code", [](std::string& detail) {
    std::size_t bad = 0;
    for (std::size_t len = 1; len <= 16; ++len) {
      const std::uint64_t size = std::uint64_t{1} << len;
      std::vector<bool> seen(size, false);
      for (std::uint64_t mask = 0; mask < size; ++mask) {
        const auto p = gray_position(BinaryState::from_mask(mask));
        if (p >= size || seen[p]) {
          ++bad;
          continue;
        }
        seen[p] = true;
        if (gray_bits(p, len).mask() != mask) ++bad;
      }
      for (std::uint64_t p = 0; p + 1 < size; ++p) {
        if (std::popcount(gray_bits(p, len).mask() ^ gray_bits(p + 1, len).mask()) != 1) ++bad;
      }
    }
    detail = fmt("lengths 1..16, %zu violations", bad);
    return bad == 0;
  });

  run(2, "exact chain identities", [&](std::string& detail) {
    bool ok = true;
    for (std::size_t k = 0; k < sequences.size(); ++k) {
      const auto r = filter(chain_reports[k], [](const std::string& n) {
        return starts_with(n, "chain.") && !starts_with(n, "chain.hitting_tail") &&
               !starts_with(n, "chain.return_tail_at_scale");
      });
      ok = ok && r.passed() && !r.checks.empty();
      detail += sequences[k].name + ": " + describe(r) + "; ";
    }
    return ok;
  });

  run(3, "return probability sandwich", [&](std::string& detail) {
    std::vector<std::uint64_t> grid(kTailHorizon);
    std::iota(grid.begin(), grid.end(), 1);
    bool ok = true;
    for (std::size_t k = 0; k < sequences.size(); ++k) {
      const auto r = check_return_bounds(sequences[k].seq, tails[k], grid);
      ok = ok && r.passed();
      detail += sequences[k].name + ": " + describe(r) + "; ";
    }
    return ok;
  });

  run(4, "hitting-time tail", [&](std::string& detail) {
    bool ok = true;
    for (std::size_t k = 0; k < sequences.size(); ++k) {
      const auto r = filter(chain_reports[k], [](const std::string& n) { return starts_with(n, "chain.hitting_tail"); });
      double worst = 1.0;
      for (const auto& c : r.checks) worst = std::min(worst, c.value);
      ok = ok && r.passed() && r.checks.size() == 8;
      detail += sequences[k].name + fmt(": min %.4f over %zu levels; ", worst, r.checks.size());
    }
    return ok;
  });

  run(5, "designer tracking", [](std::string& detail) {
    struct Case {
      const char* target;
      double gamma;
    };
    const Case cases[] = {{"pow:0.6", 0.65}, {"pow:0.75", 0.75}, {"pow:0.75", 0.8}, {"pow:0.72", 0.8}};
    std::vector<double> grid;
    for (int i = 0; i <= 600; ++i) grid.push_back(std::pow(10.0, i / 100.0));
    bool ok = true;
    for (const auto& c : cases) {
      const auto f = parse_target(c.target, c.gamma);
      const auto lipschitz = validate_log_lipschitz(f, log_spaced_pairs(40, 1e6, 1e9));
      std::size_t levels = 1;
      auto design = design_sequence(f, levels);
      while (design.second.trace.back().time_scale < 1e6) design = design_sequence(f, ++levels);
      auto r = design.second.invariant_checks();
      r.append(verify_tracking(design.first, f, grid));
      ok = ok && lipschitz.passed() && r.passed();
      detail += fmt("%s/%.2f: ", c.target, c.gamma) + describe(r) + "; ";
    }
    return ok;
  });

  run(6, "inverted-orbit identity", [](std::string& detail) {
    const std::vector<std::uint64_t> ns = {64, 256, 1024};
    const auto rows = orbit_size_experiment(DegreeSequence::constant(2), ns, 100000, kSeed);
    bool ok = true;
    for (const auto& row : rows) {
      const double z = (row.orbit_size.mean - row.exact) / row.orbit_size.stderr_;
      ok = ok && std::abs(z) <= 4.0;
      detail += fmt("n=%llu mean %.4f exact %.4f z %.2f; ", static_cast<unsigned long long>(row.n),
                    row.orbit_size.mean, row.exact, z);
    }
    return ok;
  });

  run(7, "renewal structure", [](std::string& detail) {
    const auto res = renewal_experiment(DegreeSequence::constant(2), 512, 100000, kSeed);
    detail = fmt("KS D %.5f, critical %.5f, mean gap %.3f vs return %.3f", res.ks_statistic, res.ks_critical,
                 res.inverted_gap.mean, res.forward_return.mean);
    return res.ks_statistic < res.ks_critical;
  });

  run(8, "ray-tree combinatorics", [](std::string& detail) {
    const auto seq = DegreeSequence::constant(2);
    const MotherGroup group(seq);
    std::size_t pruned_bad = 0, lone_bad = 0;
    for (std::size_t w = 0; w < 10000; ++w) {
      const std::size_t length = std::size_t{1} << (w % 11);
      const auto word = sample_word(group, length, kSeed, stream_id(8, w));
      const RayTree tree(seq, inverted_orbit_incremental(group, word));
      if (tree.pruned_size() + 1 > 3 * tree.ray_count()) ++pruned_bad;
      if (!tree.lone_child_property()) ++lone_bad;
    }
    const double m = seq.m_star();
    std::size_t count_bad = 0, element_bad = 0, words = 0;
    bool census_flags = true;
    for (std::size_t length = 1; length <= 4; ++length) {
      const auto census = exhaustive_ray_tree_census(group, length, 8);
      words += census.words;
      census_flags = census_flags && census.lone_child_property && census.pruned_bound;
      for (const auto& [r, trees] : census.trees_per_rays) {
        if (static_cast<double>(trees) > std::pow(m + 1.0, 6.0 * static_cast<double>(r))) ++count_bad;
      }
      for (const auto& e : census.trees) {
        if (std::log(static_cast<double>(e.elements)) > e.log_element_bound) ++element_bad;
      }
    }
    for (const auto& c : count_small_ray_trees(seq, 4, 6)) {
      if (static_cast<double>(c.distinct_pruned) > c.bound) ++count_bad;
    }
    detail = fmt("random words: %zu pruned-bound and %zu lone-child violations; %zu exhaustive words: "
                 "%zu tree-count and %zu element-count violations",
                 pruned_bad, lone_bad, words, count_bad, element_bad);
    return pruned_bad == 0 && lone_bad == 0 && census_flags && count_bad == 0 && element_bad == 0;
  });

  run(9, "speed exponent", [](std::string& detail) {
    const IntegerLamps z;
    const auto grid = powers_of_two(8, 16);
    const auto rows = speed_experiment(DegreeSequence::constant(2), z, grid, 1000, kSeed);
    std::vector<SeriesPoint> series;
    std::size_t outside = 0;
    for (const auto& row : rows) {
      series.push_back({static_cast<double>(row.n), row.lamp_length.mean, row.lamp_length.stderr_});
      const double slack = 4.0 * row.lamp_length.stderr_;
      if (row.lamp_length.mean < row.bracket_lower - slack || row.lamp_length.mean > row.bracket_upper + slack ||
          row.lamp_length.mean < row.return_lower - slack) {
        ++outside;
      }
    }
    const auto fit = exponent_regression(series);
    detail = fmt("slope %.4f (se %.4f), %zu of %zu means outside their brackets", fit.slope, fit.slope_stderr,
                 outside, rows.size());
    return fit.slope >= 0.70 && fit.slope <= 0.80 && outside == 0;
  });

  run(10, "entropy exponent", [](std::string& detail) {
    const auto seq = DegreeSequence::constant(2);
    const auto grid = powers_of_two(8, 16);
    const auto tail = return_tail(seq, grid.back());
    std::vector<SeriesPoint> series;
    for (const auto n : grid) series.push_back({static_cast<double>(n), orbit_size_exact(tail, n), 0.0});
    const auto fit = exponent_regression(series);
    const auto r = filter(verify_sequence(seq, grid), [](const std::string& n) {
      return (starts_with(n, "entropy_bracket.") || starts_with(n, "orbit_bounds.entropy")) &&
             n.find("[z2]") != std::string::npos;
    });
    detail = fmt("slope %.4f; brackets: ", fit.slope) + describe(r);
    return fit.slope >= 0.45 && fit.slope <= 0.55 && r.passed() && !r.checks.empty();
  });

  run(11, "cross-engine equivalence", [&](std::string& detail) {
    std::size_t mismatches = 0, words = 0, steps = 0;
    for (std::size_t w = 0; w < 1000; ++w) {
      const auto& seq = sequences[w % sequences.size()].seq;
      const MotherGroup group(seq);
      const std::size_t length = std::size_t{1} << (w % 13);
      const auto word = sample_word(group, length, kSeed, stream_id(11, w));
      if (inverted_orbit_reference(group, word) != inverted_orbit_incremental(group, word)) ++mismatches;
      ++words;
      steps += length;
    }
    detail = fmt("%zu words, %zu steps, %zu mismatches", words, steps, mismatches);
    return mismatches == 0;
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
