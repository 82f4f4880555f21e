#include "assemblyline/assemblyline.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "assemblyline/bounds.hpp"
#include "assemblyline/designer.hpp"
#include "assemblyline/error.hpp"
#include "assemblyline/experiments.hpp"
#include "assemblyline/gray_chain.hpp"
#include "assemblyline/grid.hpp"
#include "assemblyline/lamps.hpp"
#include "assemblyline/sequence.hpp"

struct al_sequence {
  assemblyline::DegreeSequence seq;
};

struct al_text {
  std::string data;
};

namespace {

using namespace assemblyline;

thread_local std::string last_error;

al_status fail(al_status status, const std::string& what) {
  last_error = what;
  return status;
}

template <class F>
al_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(static_cast<al_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(AL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AL_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::InvalidArgument, what);
}

al_text* make_text(std::string s) { return new al_text{std::move(s)}; }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json report_json(const CheckReport& report, bool summarize) {
  const auto shown = summarize ? report.summarized() : report;
  return {{"passed", report.passed()},
          {"checks_run", report.checks.size()},
          {"failures", report.failures()},
          {"checks", shown.to_json()["checks"]}};
}

std::vector<double> tracking_grid(double n_max) {
  std::vector<double> grid;
  const std::size_t count = 200;
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(std::exp(std::log(n_max) * static_cast<double>(i) / (count - 1)));
  }
  return grid;
}

}  // namespace

extern "C" {

const char* al_version(void) { return "0.1.0"; }
const char* al_last_error(void) { return last_error.c_str(); }

const char* al_text_data(const al_text* text) { return text ? text->data.c_str() : ""; }
size_t al_text_size(const al_text* text) { return text ? text->data.size() : 0; }
void al_text_free(al_text* text) { delete text; }

al_status al_sequence_from_json(const char* json, al_sequence** out) {
  return guarded([&] {
    need(json, "json is null");
    need(out, "out is null");
    *out = new al_sequence{DegreeSequence::from_json(nlohmann::json::parse(json))};
    return AL_OK;
  });
}

al_status al_sequence_constant(uint32_t degree, al_sequence** out) {
  return guarded([&] {
    need(out, "out is null");
    *out = new al_sequence{DegreeSequence::constant(degree)};
    return AL_OK;
  });
}

void al_sequence_free(al_sequence* seq) { delete seq; }

al_status al_sequence_to_json(const al_sequence* seq, al_text** out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(out, "out is null");
    *out = make_text(seq->seq.to_json().dump());
    return AL_OK;
  });
}

al_status al_sequence_degree(const al_sequence* seq, size_t level, uint32_t* out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(out, "out is null");
    *out = seq->seq.degree(level);
    return AL_OK;
  });
}

al_status al_sequence_m_star(const al_sequence* seq, uint32_t* out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(out, "out is null");
    *out = seq->seq.m_star();
    return AL_OK;
  });
}

al_status al_sequence_log_scales(const al_sequence* seq, size_t level, double* log_volume, double* log_resistance,
                                 double* log_time_scale) {
  return guarded([&] {
    need(seq, "sequence is null");
    if (log_volume) *log_volume = log_of(volume(seq->seq, level));
    if (log_resistance) *log_resistance = log_of(resistance_factor(seq->seq, level));
    if (log_time_scale) *log_time_scale = log_of(time_scale(seq->seq, level));
    return AL_OK;
  });
}

al_status al_sequence_level_of(const al_sequence* seq, double n, size_t* level, double* alpha) {
  return guarded([&] {
    need(seq, "sequence is null");
    const auto info = level_of(seq->seq, n);
    if (level) *level = info.level;
    if (alpha) *alpha = info.alpha;
    return AL_OK;
  });
}

al_status al_design(const char* target, double gamma, size_t levels, al_sequence** seq, al_text** certificate) {
  return guarded([&] {
    need(target, "target is null");
    need(seq, "sequence output is null");
    need(certificate, "certificate output is null");
    const auto f = parse_target(target, gamma);
    const auto pairs = log_spaced_pairs(40, 1e6, 1e9);
    const auto lipschitz = validate_log_lipschitz(f, pairs);
    if (!lipschitz.passed()) {
      const auto w = lipschitz.worst();
      throw_error(ErrorCode::InvalidArgument, "target is not log-Lipschitz with exponents [1/2, " + num(gamma) +
                                                  "]: f(a n)/f(n) = " + num(w.ratio) + " at a = " + num(w.a) +
                                                  ", n = " + num(w.n));
    }
    auto [sequence, cert] = design_sequence(f, levels);
    CheckReport report = cert.invariant_checks();
    const double horizon = std::min(cert.trace.back().time_scale, 1e15);
    const auto grid = tracking_grid(horizon);
    report.append(verify_tracking(sequence, f, grid));

    auto doc = cert.to_json();
    doc["lipschitz"] = {{"pairs_checked", lipschitz.pairs_checked}, {"passed", true}};
    doc["tracking_horizon"] = horizon;
    doc["report"] = report_json(report, true);
    *seq = new al_sequence{std::move(sequence)};
    *certificate = make_text(doc.dump(2));
    return report.passed() ? AL_OK : fail(AL_ERR_CHECK_FAILED, "design certificate has failing checks");
  });
}

al_status al_chain_return_tail(const al_sequence* seq, size_t horizon, double* out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(out, "out is null");
    const auto tail = return_tail(seq->seq, horizon);
    std::copy(tail.begin(), tail.end(), out);
    return AL_OK;
  });
}

al_status al_chain_tail_csv(const al_sequence* seq, size_t horizon, al_text** out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(out, "out is null");
    const auto tail = return_tail(seq->seq, horizon);
    std::size_t levels = 1;
    while (time_scale(seq->seq, levels).get_d() < static_cast<double>(horizon) + 1.0) ++levels;
    const ScaleTable table(seq->seq, levels);
    const double m = seq->seq.m_star();
    std::string csv = "i,P_T_gt_i,partial_sum,alpha_n,lower_bound,upper_bound,margin_low,margin_high\n";
    double partial = 0.0;
    for (std::size_t i = 0; i <= horizon; ++i) {
      partial += tail[i];
      // Bounds are stated for n >= 1; row 0 reuses n = 1.
      const double n = static_cast<double>(std::max<std::size_t>(i, 1));
      const auto info = table.level_of(n);
      const double n_alpha = table.volume(info.level).get_d();
      const double lower = n_alpha / n / (500.0 * m * m);
      const double upper = 2.0 * n_alpha;
      csv += std::to_string(i) + ',' + num(tail[i]) + ',' + num(partial) + ',' + num(info.alpha) + ',' +
             num(lower) + ',' + num(upper) + ',' + num(tail[i] - lower) + ',' + num(upper - partial) + '\n';
    }
    *out = make_text(std::move(csv));
    return AL_OK;
  });
}

al_status al_chain_verify(const al_sequence* seq, size_t horizon, al_text** out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(out, "out is null");
    require(horizon >= 1, ErrorCode::InvalidArgument, "horizon must be at least 1");
    const auto tail = return_tail(seq->seq, horizon);
    std::vector<std::uint64_t> ns(horizon);
    for (std::size_t i = 0; i < horizon; ++i) ns[i] = i + 1;
    CheckReport report = check_return_bounds(seq->seq, tail, ns);
    report.append(check_chain_identities(seq->seq, ChainCheckLimits{}, tail));
    *out = make_text(report_json(report, true).dump(2));
    return report.passed() ? AL_OK : fail(AL_ERR_CHECK_FAILED, "chain checks failed");
  });
}

al_status al_simulate_orbits(const al_sequence* seq, uint64_t steps, size_t replicas, uint64_t seed, int ray_tree,
                             unsigned threads, al_text** out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(out, "out is null");
    require(replicas >= 1, ErrorCode::InvalidArgument, "need at least one replica");
    const auto rows = simulate_orbits(seq->seq, steps, replicas, seed, ray_tree != 0, threads);
    std::string csv = "replica,steps,orbit_size,max_visits,support_depth";
    if (ray_tree) csv += ",rays,full_tree_size,pruned_tree_size,minimal_tree_size,pruned_bound_ok,lone_child_ok";
    csv += '\n';
    for (const auto& r : rows) {
      csv += std::to_string(r.replica) + ',' + std::to_string(r.steps) + ',' + std::to_string(r.orbit_size) + ',' +
             std::to_string(r.max_visits) + ',' + std::to_string(r.support_depth);
      if (ray_tree) {
        csv += ',' + std::to_string(r.rays) + ',' + std::to_string(r.full_size) + ',' +
               std::to_string(r.pruned_size) + ',' + std::to_string(r.minimal_full_size) + ',' +
               (r.pruned_bound ? "1" : "0") + ',' + (r.lone_child_property ? "1" : "0");
      }
      csv += '\n';
    }
    *out = make_text(std::move(csv));
    return AL_OK;
  });
}

al_status al_simulate_wreath(const al_sequence* seq, const char* lamps, const char* grid, size_t replicas,
                             uint64_t seed, unsigned threads, al_text** out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(lamps, "lamps is null");
    need(grid, "grid is null");
    need(out, "out is null");
    require(replicas >= 1, ErrorCode::InvalidArgument, "need at least one replica");
    const auto group = make_lamp_group(lamps);
    const auto ns = parse_grid(grid);
    const auto rows = speed_experiment(seq->seq, *group, ns, replicas, seed, threads);
    std::string csv =
        "n,replicas,mean_lamp_length,stderr,mean_theoretical_stat,mean_orbit_size,exact_orbit_size,thm41_lower,"
        "thm65_lower,thm65_upper\n";
    for (const auto& r : rows) {
      csv += std::to_string(r.n) + ',' + std::to_string(r.replicas) + ',' + num(r.lamp_length.mean) + ',' +
             num(r.lamp_length.stderr_) + ',' + num(r.theoretical.mean) + ',' + num(r.orbit_size.mean) + ',' +
             num(r.exact_orbit_size) + ',' + num(r.return_lower) + ',' + num(r.bracket_lower) + ',' +
             num(r.bracket_upper) + '\n';
    }
    *out = make_text(std::move(csv));
    return AL_OK;
  });
}

al_status al_verify_bounds(const al_sequence* seq, const char* grid, al_text** out) {
  return guarded([&] {
    need(seq, "sequence is null");
    need(grid, "grid is null");
    need(out, "out is null");
    const auto ns = parse_grid(grid);
    const auto report = verify_sequence(seq->seq, ns);
    auto doc = report_json(report, false);
    doc["sequence"] = seq->seq.to_json();
    *out = make_text(doc.dump(2));
    return report.passed() ? AL_OK : fail(AL_ERR_CHECK_FAILED, "exact-input checks failed");
  });
}

}  // extern "C"
