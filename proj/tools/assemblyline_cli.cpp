// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "assemblyline/assemblyline.h"

namespace {

// Exit codes: 0 ok, 1 usage or input error, 2 a check failed.
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

struct SequenceDeleter {
  void operator()(al_sequence* s) const { al_sequence_free(s); }
};
struct TextDeleter {
  void operator()(al_text* t) const { al_text_free(t); }
};
using SequencePtr = std::unique_ptr<al_sequence, SequenceDeleter>;
using TextPtr = std::unique_ptr<al_text, TextDeleter>;

struct Failure {
  int code;
};

void die(const std::string& what) {
  std::cerr << "assemblyline: " << what << '\n';
  throw Failure{kExitError};
}

// Anything other than ok or a failed check is fatal.
bool check(al_status status, const char* context) {
  if (status == AL_OK) return true;
  if (status == AL_ERR_CHECK_FAILED) return false;
  die(std::string(context) + ": " + al_last_error());
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const al_text* text) {
  if (path.empty() || path == "-") {
    std::fwrite(al_text_data(text), 1, al_text_size(text), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) die("cannot write " + path);
  out.write(al_text_data(text), static_cast<std::streamsize>(al_text_size(text)));
  if (!out) die("cannot write " + path);
}

// A JSON file, or "const:M" for the constant sequence.
SequencePtr load_sequence(const std::string& spec) {
  al_sequence* raw = nullptr;
  if (spec.rfind("const:", 0) == 0) {
    unsigned long m = 0;
    try {
      m = std::stoul(spec.substr(6));
    } catch (const std::exception&) {
      die("bad constant sequence " + spec);
    }
    check(al_sequence_constant(static_cast<std::uint32_t>(m), &raw), "sequence");
  } else {
    check(al_sequence_from_json(read_file(spec).c_str(), &raw), spec.c_str());
  }
  return SequencePtr(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assembly-line chains, inverted orbits and wreath-product walks"};
  app.set_version_flag("--version", std::string(al_version()));
  app.require_subcommand(1);

  auto* design = app.add_subcommand("design", "Build a degree sequence tracking a target profile");
  double gamma = 0.0;
  std::string target;
  std::size_t levels = 0;
  std::string design_out, design_report;
  design->add_option("--gamma", gamma, "Declared upper exponent in [1/2, 1)")->required();
  design->add_option("--target", target, "pow:beta or pow-log:beta,k")->required();
  design->add_option("--levels", levels, "Number of levels to construct")->required()->check(CLI::PositiveNumber);
  design->add_option("--out", design_out, "Sequence JSON output")->required();
  design->add_option("--report", design_report, "Certificate JSON output");

  auto* chain = app.add_subcommand("chain", "Exact return-time tail of the projected chain");
  std::string chain_seq, chain_out;
  std::size_t horizon = 0;
  bool chain_verify = false;
  chain->add_option("--seq", chain_seq, "Sequence JSON (or const:M)")->required();
  chain->add_option("--horizon", horizon, "Largest i")->required()->check(CLI::PositiveNumber);
  chain->add_option("--out", chain_out, "CSV output (tail table), or JSON report with --verify");
  chain->add_flag("--verify", chain_verify, "Run all chain checks; exit 2 on a violation");

  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo over inverted orbits or wreath walks");
  std::string sim_seq, sim_out, stats = "orbit", lamps = "z", grid;
  std::uint64_t steps = 0, seed = 0;
  std::size_t replicas = 1;
  unsigned threads = 0;
  bool wreath = false;
  simulate->add_option("--seq", sim_seq, "Sequence JSON (or const:M)")->required();
  simulate->add_option("--steps", steps, "Walk length");
  simulate->add_option("--replicas", replicas, "Number of replicas")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--stats", stats, "orbit or orbit,raytree");
  simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");
  simulate->add_flag("--wreath", wreath, "Switch-walk-switch speed table");
  simulate->add_option("--lamps", lamps, "Lamp group for --wreath")->check(CLI::IsMember({"z", "z2"}));
  simulate->add_option("--grid", grid, "Times for --wreath, e.g. 2^8:2^16");
  simulate->add_option("--out", sim_out, "CSV output");

  auto* verify = app.add_subcommand("verify", "Exact-input bound checks; exit 2 if any fails");
  std::string ver_seq, ver_grid, ver_out;
  verify->add_option("--seq", ver_seq, "Sequence JSON (or const:M)")->required();
  verify->add_option("--grid", ver_grid, "Times, e.g. 2^4:2^16")->required();
  verify->add_option("--out", ver_out, "JSON report output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*design) {
      al_sequence* raw = nullptr;
      al_text* cert_raw = nullptr;
      const bool ok = check(al_design(target.c_str(), gamma, levels, &raw, &cert_raw), "design");
      SequencePtr seq(raw);
      TextPtr cert(cert_raw);
      al_text* json_raw = nullptr;
      check(al_sequence_to_json(seq.get(), &json_raw), "design");
      TextPtr json(json_raw);
      write_output(design_out, json.get());
      if (!design_report.empty()) write_output(design_report, cert.get());
      if (!ok) {
        std::cerr << "assemblyline: design certificate has failing checks\n";
        return kExitCheckFailed;
      }
      return 0;
    }
    if (*chain) {
      const auto seq = load_sequence(chain_seq);
      al_text* raw = nullptr;
      if (chain_verify) {
        const bool ok = check(al_chain_verify(seq.get(), horizon, &raw), "chain");
        TextPtr text(raw);
        write_output(chain_out, text.get());
        if (!ok) {
          std::cerr << "assemblyline: chain checks failed\n";
          return kExitCheckFailed;
        }
        return 0;
      }
      check(al_chain_tail_csv(seq.get(), horizon, &raw), "chain");
      TextPtr text(raw);
      write_output(chain_out, text.get());
      return 0;
    }
    if (*simulate) {
      const auto seq = load_sequence(sim_seq);
      al_text* raw = nullptr;
      if (wreath) {
        if (grid.empty()) die("--wreath needs --grid");
        check(al_simulate_wreath(seq.get(), lamps.c_str(), grid.c_str(), replicas, seed, threads, &raw), "simulate");
      } else {
        if (steps == 0) die("simulate needs --steps");
        bool ray_tree = false;
        std::stringstream list(stats);
        for (std::string item; std::getline(list, item, ',');) {
          if (item == "raytree") {
            ray_tree = true;
          } else if (item != "orbit") {
            die("unknown statistic " + item);
          }
        }
        check(al_simulate_orbits(seq.get(), steps, replicas, seed, ray_tree ? 1 : 0, threads, &raw), "simulate");
      }
      TextPtr text(raw);
      write_output(sim_out, text.get());
      return 0;
    }
    if (*verify) {
      const auto seq = load_sequence(ver_seq);
      al_text* raw = nullptr;
      const bool ok = check(al_verify_bounds(seq.get(), ver_grid.c_str(), &raw), "verify");
      TextPtr text(raw);
      write_output(ver_out, text.get());
      if (!ok) {
        std::cerr << "assemblyline: exact-input checks failed\n";
        return kExitCheckFailed;
      }
      return 0;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
