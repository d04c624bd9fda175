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

// Orchestrated runs: theta sweeps against the closed forms, four-setting CHSH
// runs, (eta, v) region scans. Every sweep row and CHSH setting draws from
// its own derived substream.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lhvsim/analytic.hpp"
#include "lhvsim/errors.hpp"
#include "lhvsim/model.hpp"
#include "lhvsim/montecarlo.hpp"
#include "lhvsim/random.hpp"
#include "lhvsim/types.hpp"

namespace lhvsim {

/// Distance between observed and expected in units of sigma. A zero sigma
/// demands exact agreement.
inline double sigma_distance(double observed, double expected, double sigma) {
  const double diff = std::abs(observed - expected);
  if (sigma > 0.0) return diff / sigma;
  return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

inline void require_feasible(const ModelParams& params) {
  if (!is_feasible(params.eta, params.v, params.kind)) {
    throw InfeasibleParameters("parameters outside the model's validity region (eta=" +
                               std::to_string(params.eta) + ", v=" + std::to_string(params.v) +
                               ", model=" + std::string(model_name(params.kind)) + ")");
  }
}

struct SweepRow {
  double theta = 0.0;
  ProbQuad mc;
  ProbQuad oracle;
  double corr_mc = 0.0;
  double corr_oracle = 0.0;
  /// Standard error of corr_mc at the expected coincidence count.
  double corr_sigma = 0.0;
  std::uint64_t n_pairs = 0;
  /// Derived seed of this row's substream.
  std::uint64_t seed = 0;
  Tally tally;
};

/// Expected-count standard error of the conditional correlation.
inline double oracle_corr_sigma(double corr, double eta, std::uint64_t n_pairs) {
  return std::sqrt(std::max(0.0, 1.0 - corr * corr) /
                   (eta * eta * static_cast<double>(n_pairs)));
}

/// Uniform theta grid over [0, pi] inclusive, detector 1 held at 0.
inline std::vector<SweepRow> theta_sweep(const ModelParams& params, int n_steps,
                                         std::uint64_t pairs_per_step, std::uint64_t seed,
                                         unsigned workers = default_worker_count()) {
  if (n_steps < 2) throw InvalidConfig("theta_sweep: need at least 2 steps");
  if (pairs_per_step < 1) throw InvalidConfig("theta_sweep: need at least 1 pair per step");
  require_feasible(params);

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(n_steps));
  for (int i = 0; i < n_steps; ++i) {
    SweepRow row;
    row.theta = i + 1 == n_steps ? constants::pi : constants::pi * i / (n_steps - 1);
    row.n_pairs = pairs_per_step;
    row.seed = derive_stream_seed(seed, static_cast<std::uint64_t>(i));
    row.oracle = nonideal_probs(row.theta, params.eta, params.v, params.kind);
    row.corr_oracle = correlation(row.theta, params.v, params.kind);

    RunConfig config{params, 0.0, row.theta, pairs_per_step, row.seed, default_chunk_size};
    row.tally = run(config, PatternDetector{}, workers);
    const double n = static_cast<double>(row.tally.n_total);
    row.mc = {static_cast<double>(row.tally.n_pp) / n, static_cast<double>(row.tally.n_pm) / n,
              static_cast<double>(row.tally.n_mp) / n, static_cast<double>(row.tally.n_mm) / n};
    row.corr_mc = row.tally.coincidences() > 0 ? estimate(row.tally).corr_hat
                                               : std::numeric_limits<double>::quiet_NaN();
    row.corr_sigma = params.eta > 0.0 ? oracle_corr_sigma(row.corr_oracle, params.eta, pairs_per_step)
                                      : 0.0;
    rows.push_back(row);
  }
  return rows;
}

struct SweepSummary {
  double max_abs_deviation = 0.0;
  /// Largest |corr_mc - corr| / sigma over the rows.
  double max_sigma_distance = 0.0;
  bool pass = true;
};

/// Gates every row's correlation at five standard errors. Rows without
/// coincidences are skipped.
inline SweepSummary summarize_sweep(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  for (const SweepRow& row : rows) {
    if (std::isnan(row.corr_mc)) continue;
    s.max_abs_deviation = std::max(s.max_abs_deviation, std::abs(row.corr_mc - row.corr_oracle));
    s.max_sigma_distance =
        std::max(s.max_sigma_distance, sigma_distance(row.corr_mc, row.corr_oracle, row.corr_sigma));
  }
  s.pass = s.max_sigma_distance <= gate_sigmas;
  return s;
}

struct ChshSetting {
  std::string label;
  double angle_1 = 0.0;
  double angle_2 = 0.0;
  double corr_mc = 0.0;
  double std_error = 0.0;
  double corr_oracle = 0.0;
  Tally tally;
};

struct ChshReport {
  ChshAngles angles;
  std::array<ChshSetting, 4> settings;
  double s_mc = 0.0;
  double s_sigma = 0.0;
  double s_oracle = 0.0;
  double bound = 0.0;
  /// s_mc exceeds the bound by more than five standard errors.
  bool violated_mc = false;
};

/// Runs the four settings AC, AD, BC, BD and assembles
///   S = |E(AC) - E(AD)| + |E(BC) + E(BD)|.
inline ChshReport chsh_experiment(const ModelParams& params, const ChshAngles& angles,
                                  std::uint64_t pairs_per_setting, std::uint64_t seed,
                                  unsigned workers = default_worker_count()) {
  if (pairs_per_setting < 1) throw InvalidConfig("chsh_experiment: need at least 1 pair per setting");
  require_feasible(params);

  ChshReport report;
  report.angles = angles;
  report.bound = chsh_bound(params.eta);
  report.s_oracle = chsh_value(params.v, params.kind, angles);

  const std::array<std::array<double, 2>, 4> pairs{{{angles.phi_a, angles.phi_c},
                                                    {angles.phi_a, angles.phi_d},
                                                    {angles.phi_b, angles.phi_c},
                                                    {angles.phi_b, angles.phi_d}}};
  const std::array<const char*, 4> labels{"AC", "AD", "BC", "BD"};
  double variance = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    ChshSetting& s = report.settings[i];
    s.label = labels[i];
    s.angle_1 = pairs[i][0];
    s.angle_2 = pairs[i][1];
    s.corr_oracle = correlation(s.angle_2 - s.angle_1, params.v, params.kind);
    RunConfig config{params, s.angle_1, s.angle_2, pairs_per_setting, derive_stream_seed(seed, i),
                     default_chunk_size};
    s.tally = run(config, PatternDetector{}, workers);
    if (s.tally.coincidences() > 0) {
      const Estimates est = estimate(s.tally);
      s.corr_mc = est.corr_hat;
      s.std_error = est.std_errors.corr;
    } else {
      s.corr_mc = std::numeric_limits<double>::quiet_NaN();
    }
    variance += s.std_error * s.std_error;
  }
  const auto& st = report.settings;
  report.s_mc = std::abs(st[0].corr_mc - st[1].corr_mc) + std::abs(st[2].corr_mc + st[3].corr_mc);
  report.s_sigma = std::sqrt(variance);
  report.violated_mc = report.s_mc > report.bound + gate_sigmas * report.s_sigma;
  return report;
}

struct RegionRow {
  double eta = 0.0;
  double v = 0.0;
  RegionVerdict verdict;
};

/// eta_i = i / eta_steps for i = 1..eta_steps, v_j = j / (v_steps - 1) for
/// j = 0..v_steps-1; eta-major, both ascending.
inline std::vector<RegionRow> region_scan(int eta_steps, int v_steps) {
  if (eta_steps < 2 || v_steps < 2) throw InvalidConfig("region_scan: need at least 2 steps per axis");
  std::vector<RegionRow> rows;
  rows.reserve(static_cast<std::size_t>(eta_steps) * static_cast<std::size_t>(v_steps));
  for (int i = 1; i <= eta_steps; ++i) {
    const double eta = static_cast<double>(i) / eta_steps;
    for (int j = 0; j < v_steps; ++j) {
      const double v = static_cast<double>(j) / (v_steps - 1);
      rows.push_back({eta, v, classify_region(eta, v)});
    }
  }
  return rows;
}

} // namespace lhvsim
