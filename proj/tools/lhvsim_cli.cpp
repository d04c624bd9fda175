// Copyright 2026 The lhvsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   lhvsim params  --eta E [--vis V] [--model sin|line|unsym]
//   lhvsim sweep   --eta E [--vis V] [--model M] [--steps N] [--pairs N] [--seed S] [--out F] [--format csv|json]
//   lhvsim chsh    --eta E [--vis V] [--model M] [--pairs N] [--seed S] [--angles a,b,c,d] [--degrees] [--format F]
//   lhvsim region  [--eta-steps N] [--vis-steps N] [--out F] [--format F]
//   lhvsim verify  [--pairs N] [--seed S]
//
// Exit codes: 0 success, 1 check or gate failure, 2 usage error or infeasible input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lhvsim/lhvsim.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_gate_failure = 1;
constexpr int exit_usage = 2;

const std::map<std::string, lhvsim::PatternKind> model_map{
    {"sin", lhvsim::PatternKind::SymmetrizedSinusoidal},
    {"line", lhvsim::PatternKind::SymmetrizedStaircase},
    {"unsym", lhvsim::PatternKind::UnsymmetrizedSinusoidal}};

const std::map<std::string, lhvsim::io::OutputFormat> format_map{{"csv", lhvsim::io::OutputFormat::csv},
                                                                 {"json", lhvsim::io::OutputFormat::json}};

struct ModelOptions {
  double eta = 0.0;
  double vis = 1.0;
  lhvsim::PatternKind kind = lhvsim::PatternKind::SymmetrizedSinusoidal;
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--eta", opts.eta, "Detector efficiency in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--vis", opts.vis, "Visibility in [0, 1]")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--model", opts.kind, "Pattern: sin, line or unsym")
      ->transform(CLI::CheckedTransformer(model_map, CLI::ignore_case))
      ->default_str("sin");
}

double visibility_ceiling(double eta, lhvsim::PatternKind kind) {
  return eta > 0.0 ? lhvsim::max_visibility(eta, kind) : 1.0;
}

/// Writes `body` to `path`, or to stdout when path is empty.
template <typename Writer>
bool emit(const std::string& path, Writer&& body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return false;
  }
  body(out);
  return static_cast<bool>(out);
}

int cmd_params(const ModelOptions& opts) {
  std::cout << "eta=" << lhvsim::io::format_double(opts.eta) << '\n'
            << "v=" << lhvsim::io::format_double(opts.vis) << '\n'
            << "model=" << lhvsim::model_name(opts.kind) << '\n'
            << "max_visibility=" << lhvsim::io::format_double(visibility_ceiling(opts.eta, opts.kind)) << '\n';
  try {
    const lhvsim::ModelParams p = lhvsim::solve_params(opts.eta, opts.vis, opts.kind);
    std::cout << "a=" << lhvsim::io::format_double(p.a) << '\n'
              << "b=" << lhvsim::io::format_double(p.b) << '\n'
              << "c=" << lhvsim::io::format_double(p.c) << '\n'
              << "feasible=true\n";
    return exit_ok;
  } catch (const lhvsim::InfeasibleParameters& e) {
    std::cout << "feasible=false\n";
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

struct SweepOptions {
  ModelOptions model;
  int steps = 25;
  std::uint64_t pairs = 1000000;
  std::uint64_t seed = 42;
  std::string out;
  lhvsim::io::OutputFormat format = lhvsim::io::OutputFormat::csv;
  unsigned threads = lhvsim::default_worker_count();
};

int cmd_sweep(const SweepOptions& opts) {
  lhvsim::ModelParams params;
  try {
    params = lhvsim::solve_params(opts.model.eta, opts.model.vis, opts.model.kind);
  } catch (const lhvsim::InfeasibleParameters& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  const auto rows = lhvsim::theta_sweep(params, opts.steps, opts.pairs, opts.seed, opts.threads);
  const bool written = emit(opts.out, [&](std::ostream& os) {
    if (opts.format == lhvsim::io::OutputFormat::csv) {
      lhvsim::io::write_sweep_csv(os, rows);
    } else {
      os << lhvsim::io::sweep_json(rows, {"sweep", opts.seed, params}).dump(2) << '\n';
    }
  });
  if (!written) return exit_usage;

  const auto summary = lhvsim::summarize_sweep(rows);
  std::ostream& log = opts.out.empty() ? std::cerr : std::cout;
  log << "max_abs_corr_deviation=" << lhvsim::io::format_double(summary.max_abs_deviation)
      << " max_sigma=" << lhvsim::io::format_double(summary.max_sigma_distance)
      << " gate=" << lhvsim::io::format_double(lhvsim::gate_sigmas) << " " << (summary.pass ? "PASS" : "FAIL")
      << '\n';
  return summary.pass ? exit_ok : exit_gate_failure;
}

struct ChshOptions {
  ModelOptions model;
  std::uint64_t pairs = 1000000;
  std::uint64_t seed = 42;
  std::vector<double> angles;
  bool degrees = false;
  std::string out;
  lhvsim::io::OutputFormat format = lhvsim::io::OutputFormat::csv;
  unsigned threads = lhvsim::default_worker_count();
};

int cmd_chsh(const ChshOptions& opts) {
  lhvsim::ModelParams params;
  try {
    params = lhvsim::solve_params(opts.model.eta, opts.model.vis, opts.model.kind);
  } catch (const lhvsim::InfeasibleParameters& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  if (params.eta <= 0.0) {
    std::cerr << "error: the CHSH bound needs eta > 0\n";
    return exit_usage;
  }
  lhvsim::ChshAngles angles = lhvsim::standard_chsh_angles();
  if (!opts.angles.empty()) {
    const double scale = opts.degrees ? std::numbers::pi / 180.0 : 1.0;
    angles = {opts.angles[0] * scale, opts.angles[1] * scale, opts.angles[2] * scale, opts.angles[3] * scale};
  }
  const auto report = lhvsim::chsh_experiment(params, angles, opts.pairs, opts.seed, opts.threads);
  const bool written = emit(opts.out, [&](std::ostream& os) {
    if (opts.format == lhvsim::io::OutputFormat::csv) {
      lhvsim::io::write_chsh_csv(os, report);
    } else {
      os << lhvsim::io::chsh_json(report, {"chsh", opts.seed, params}).dump(2) << '\n';
    }
  });
  if (!written) return exit_usage;
  if (report.violated_mc) {
    std::cerr << "error: simulated S exceeds the bound by more than "
              << lhvsim::io::format_double(lhvsim::gate_sigmas) << " standard errors\n";
    return exit_gate_failure;
  }
  return exit_ok;
}

struct RegionOptions {
  int eta_steps = 101;
  int vis_steps = 101;
  std::string out;
  lhvsim::io::OutputFormat format = lhvsim::io::OutputFormat::csv;
};

int cmd_region(const RegionOptions& opts) {
  const auto rows = lhvsim::region_scan(opts.eta_steps, opts.vis_steps);
  const bool written = emit(opts.out, [&](std::ostream& os) {
    if (opts.format == lhvsim::io::OutputFormat::csv) {
      lhvsim::io::write_region_csv(os, rows);
    } else {
      os << lhvsim::io::region_json(rows, {"region", std::nullopt, std::nullopt}).dump(2) << '\n';
    }
  });
  return written ? exit_ok : exit_usage;
}

struct VerifyOptions {
  std::uint64_t pairs = 1000000;
  std::uint64_t seed = 42;
  unsigned threads = lhvsim::default_worker_count();
};

int cmd_verify(const VerifyOptions& opts) {
  const auto report = lhvsim::verify_suite(opts.pairs, opts.seed, lhvsim::PatternDetector{}, opts.threads);
  std::size_t failures = 0;
  for (const auto& c : report.checks) {
    const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
    std::cout << status << ' ' << c.name;
    if (!c.skipped) {
      std::cout << " deviation=" << lhvsim::io::format_double(c.deviation)
                << " threshold=" << lhvsim::io::format_double(c.threshold);
    }
    if (!c.note.empty() && c.skipped) std::cout << " (" << c.note << ')';
    std::cout << '\n';
    if (!c.passed) ++failures;
  }
  std::cout << (failures == 0 ? "ALL PASS" : "FAILED") << ": " << report.checks.size() - failures << '/'
            << report.checks.size() << " checks passed\n";
  return failures == 0 ? exit_ok : exit_gate_failure;
}

void add_format_options(CLI::App* cmd, std::string& out, lhvsim::io::OutputFormat& format) {
  cmd->add_option("--out", out, "Output file (stdout when omitted)");
  cmd->add_option("--format", format, "csv or json")
      ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case))
      ->default_str("csv");
}

void add_threads_option(CLI::App* cmd, unsigned& threads) {
  cmd->add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-by-event local hidden-variable model simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lhvsim::io::version));

  ModelOptions params_opts;
  auto* params_cmd = app.add_subcommand("params", "Solve pattern parameters for (eta, v)");
  add_model_options(params_cmd, params_opts);

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo theta sweep against the closed forms");
  add_model_options(sweep_cmd, sweep_opts.model);
  sweep_cmd->add_option("--steps", sweep_opts.steps, "Grid points over [0, pi]")
      ->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  sweep_cmd->add_option("--pairs", sweep_opts.pairs, "Pairs per grid point")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_opts.seed, "Random seed")->capture_default_str();
  add_format_options(sweep_cmd, sweep_opts.out, sweep_opts.format);
  add_threads_option(sweep_cmd, sweep_opts.threads);

  ChshOptions chsh_opts;
  auto* chsh_cmd = app.add_subcommand("chsh", "Four-setting CHSH run against 4/eta - 2");
  add_model_options(chsh_cmd, chsh_opts.model);
  chsh_cmd->add_option("--pairs", chsh_opts.pairs, "Pairs per setting")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  chsh_cmd->add_option("--seed", chsh_opts.seed, "Random seed")->capture_default_str();
  chsh_cmd->add_option("--angles", chsh_opts.angles, "Orientations a,b,c,d (radians unless --degrees)")
      ->delimiter(',')
      ->expected(4);
  chsh_cmd->add_flag("--degrees", chsh_opts.degrees, "Read --angles in degrees");
  add_format_options(chsh_cmd, chsh_opts.out, chsh_opts.format);
  add_threads_option(chsh_cmd, chsh_opts.threads);

  RegionOptions region_opts;
  auto* region_cmd = app.add_subcommand("region", "Classify an (eta, v) grid");
  region_cmd->add_option("--eta-steps", region_opts.eta_steps, "Efficiency grid points over (0, 1]")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));
  region_cmd->add_option("--vis-steps", region_opts.vis_steps, "Visibility grid points over [0, 1]")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));
  add_format_options(region_cmd, region_opts.out, region_opts.format);

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant verification suite");
  verify_cmd->add_option("--pairs", verify_opts.pairs, "Pairs per Monte Carlo configuration")
      ->capture_default_str()
      ->check(CLI::Range(lhvsim::minimum_verify_budget, std::uint64_t{1} << 40));
  verify_cmd->add_option("--seed", verify_opts.seed, "Random seed")->capture_default_str();
  add_threads_option(verify_cmd, verify_opts.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*params_cmd) return cmd_params(params_opts);
    if (*sweep_cmd) return cmd_sweep(sweep_opts);
    if (*chsh_cmd) return cmd_chsh(chsh_opts);
    if (*region_cmd) return cmd_region(region_opts);
    if (*verify_cmd) return cmd_verify(verify_opts);
  } catch (const lhvsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
