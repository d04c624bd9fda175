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

// One executable gate over the library's invariants: exact analytic
// identities, pattern geometry, deterministic quadrature of the detector
// regions, and 5-sigma Monte Carlo comparisons against the closed forms.
//
// The suite is templated on the detector so a deliberately broken pattern can
// be pushed through it.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lhvsim/analytic.hpp"
#include "lhvsim/experiments.hpp"
#include "lhvsim/model.hpp"
#include "lhvsim/montecarlo.hpp"
#include "lhvsim/quadrature.hpp"
#include "lhvsim/random.hpp"

namespace lhvsim {

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline constexpr std::uint64_t minimum_verify_budget = 100000;

namespace detail {

inline std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

inline std::string config_label(PatternKind kind, double eta, double v, double theta) {
  return std::string(model_name(kind)) + ",eta=" + fmt_double(eta) + ",v=" + fmt_double(v) +
         ",theta=" + fmt_double(theta);
}

class CheckList {
public:
  void add(std::string name, double deviation, double threshold, std::string note = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.deviation = deviation;
    c.threshold = threshold;
    c.passed = deviation <= threshold;
    c.note = std::move(note);
    report_.checks.push_back(std::move(c));
  }

  void skip(std::string name, std::string note) {
    CheckResult c;
    c.name = std::move(name);
    c.passed = true;
    c.skipped = true;
    c.note = std::move(note);
    report_.checks.push_back(std::move(c));
  }

  VerifyReport take() { return std::move(report_); }

private:
  VerifyReport report_;
};

inline std::vector<double> theta_grid(int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(constants::pi * i / (n - 1));
  return out;
}

struct ModelPoint {
  PatternKind kind;
  double eta;
  double v;
};

inline const std::vector<ModelPoint>& analytic_points() {
  static const std::vector<ModelPoint> points{
      {PatternKind::SymmetrizedSinusoidal, 0.7, 1.0},  {PatternKind::SymmetrizedSinusoidal, 0.7, 0.8},
      {PatternKind::SymmetrizedSinusoidal, 1.0, 0.6},  {PatternKind::SymmetrizedStaircase, 0.7, 1.0},
      {PatternKind::SymmetrizedStaircase, 0.7, 0.8},   {PatternKind::SymmetrizedStaircase, 1.0, 0.6},
      {PatternKind::UnsymmetrizedSinusoidal, 0.7, 1.0}};
  return points;
}

inline void analytic_checks(CheckList& checks) {
  using constants::pi;
  const auto thetas = theta_grid(721);

  double norm_dev = 0.0;
  double sym_dev = 0.0;
  double ident_dev = 0.0;
  for (double theta : thetas) {
    norm_dev = std::max(norm_dev, std::abs(qm_probs(theta).sum() - 1.0));
    for (const auto& pt : analytic_points()) {
      const ProbQuad q = nonideal_probs(theta, pt.eta, pt.v, pt.kind);
      norm_dev = std::max(norm_dev, std::abs(q.sum() - pt.eta * pt.eta));
      sym_dev = std::max({sym_dev, std::abs(q.p_pp - q.p_mm), std::abs(q.p_pm - q.p_mp)});
      ident_dev = std::max(
          ident_dev, std::abs(q.signed_sum() / (pt.eta * pt.eta) - correlation(theta, pt.v, pt.kind)));
    }
  }
  checks.add("analytic.normalization", norm_dev, 1e-14);
  checks.add("analytic.symmetry", sym_dev, 0.0);
  checks.add("analytic.correlation_identity", ident_dev, 1e-12);

  double knot_dev = 0.0;
  for (double t : {0.0, pi / 4.0, 3.0 * pi / 4.0, pi}) knot_dev = std::max(knot_dev, std::abs(line_g(t) - std::cos(t)));
  checks.add("analytic.line_g_knots", knot_dev, 1e-15);

  double chord_gap = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = pi * i / 100000.0;
    chord_gap = std::max(chord_gap, std::abs(line_g(t) - std::cos(t)));
  }
  checks.add("analytic.line_g_chord_gap", chord_gap, 0.076);

  const double q = pi / 4.0;
  const double outer_slope = (line_g(0.0) - line_g(q)) / q;
  const double inner_slope = (line_g(q) - line_g(2.0 * q)) / q;
  checks.add("analytic.slope_ratio", std::abs(outer_slope / inner_slope - constants::staircase_step_ratio), 1e-12);

  double frontier_dev = 0.0;
  double equality_dev = 0.0;
  const double lo = constants::chsh_efficiency_threshold;
  for (int i = 1; i <= 100; ++i) {
    const double eta = lo + (1.0 - lo) * i / 100.0;
    const double vmax = max_visibility(eta, PatternKind::SymmetrizedStaircase);
    frontier_dev = std::max(frontier_dev, std::abs(vmax - chsh_bound(eta) / (2.0 * constants::sqrt2)));
    equality_dev = std::max(equality_dev, std::abs(chsh_value(vmax, PatternKind::SymmetrizedStaircase,
                                                              standard_chsh_angles()) -
                                                   chsh_bound(eta)));
  }
  checks.add("analytic.staircase_frontier_is_chsh_frontier", frontier_dev, 1e-12);
  checks.add("analytic.chsh_equality_on_frontier", equality_dev, 1e-12);

  double excess = -std::numeric_limits<double>::infinity();
  double monotone_violation = 0.0;
  double verdict_violation = 0.0;
  for (const PatternKind kind : {PatternKind::SymmetrizedSinusoidal, PatternKind::SymmetrizedStaircase}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 400; ++i) {
      const double eta = i / 400.0;
      const double vmax = max_visibility(eta, kind);
      monotone_violation = std::max(monotone_violation, vmax - previous);
      previous = vmax;
      for (int j = 0; j <= 40; ++j) {
        const double v = j / 40.0;
        if (!is_feasible(eta, v, kind)) continue;
        excess = std::max(excess, chsh_value(v, kind, standard_chsh_angles()) - chsh_bound(eta));
      }
    }
  }
  checks.add("analytic.model_respects_chsh", std::max(0.0, excess), 1e-12);
  checks.add("analytic.max_visibility_monotone", monotone_violation, 0.0);

  for (const RegionRow& row : region_scan(101, 101)) {
    const auto& r = row.verdict;
    if (r.gap != (!r.sin_feasible && !r.chsh_violated)) verdict_violation += 1.0;
    if (r.chsh_violated && r.line_feasible) verdict_violation += 1.0;
  }
  for (int i = 1; i <= 100; ++i) {
    const double eta = i / 100.0;
    RegionVerdict previous = classify_region(eta, 0.0);
    for (int j = 1; j <= 100; ++j) {
      const RegionVerdict now = classify_region(eta, j / 100.0);
      // feasibility only switches off and violation only switches on as v grows
      if ((now.sin_feasible && !previous.sin_feasible) || (now.line_feasible && !previous.line_feasible) ||
          (!now.chsh_violated && previous.chsh_violated))
        verdict_violation += 1.0;
      previous = now;
    }
  }
  checks.add("analytic.region_verdict_consistency", verdict_violation, 0.0);

  const double const_dev = std::max(
      {std::abs(max_visibility(1.0, PatternKind::SymmetrizedSinusoidal) - 2.0 / pi),
       std::abs(constants::full_visibility_efficiency - 4.0 / (2.0 + pi)),
       std::abs(max_visibility(constants::full_visibility_efficiency, PatternKind::SymmetrizedSinusoidal) - 1.0),
       std::abs(constants::bell_efficiency_threshold - 8.0 / 9.0),
       std::abs(chsh_bound(constants::chsh_efficiency_threshold) - 2.0 * constants::sqrt2)});
  checks.add("analytic.constants", const_dev, 1e-12);

  const double slack = bell_generalized_slack(constants::bell_efficiency_threshold, 1.0, pi / 3.0,
                                              2.0 * pi / 3.0, pi / 3.0);
  checks.add("analytic.bell_threshold_slack", std::abs(slack), 1e-12);
}

template <Detector D>
void model_checks(CheckList& checks, const D& detector, std::uint64_t seed) {
  using constants::pi;
  double disagreements = 0.0;
  double consistency = 0.0;
  for (const PatternKind kind : {PatternKind::SymmetrizedSinusoidal, PatternKind::SymmetrizedStaircase}) {
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const double eta = i / 40.0;
        const double v = j / 40.0;
        const bool feasible = is_feasible(eta, v, kind);
        try {
          const ModelParams p = solve_params(eta, v, kind);
          if (!feasible || !params_in_range(p)) disagreements += 1.0;
          const double k = kind == PatternKind::SymmetrizedStaircase ? 1.0 / constants::sqrt2 : 2.0 / pi;
          const double singles_free = p.b * p.c + k * p.a * (1.0 - p.c);
          const double scale = std::max(1.0, eta);
          consistency = std::max({consistency, std::abs(p.b + singles_free - eta) / scale,
                                  std::abs(2.0 * singles_free - eta * eta) / scale});
          if (eta > 0.0) {
            const double vis = kind == PatternKind::SymmetrizedStaircase ? constants::sqrt2 * p.a / (eta * eta)
                                                                         : 4.0 * p.a / (pi * eta * eta);
            consistency = std::max(consistency, std::abs(vis - v));
          }
        } catch (const InfeasibleParameters&) {
          if (feasible) disagreements += 1.0;
        }
      }
    }
  }
  checks.add("model.solver_classifier_agreement", disagreements, 0.0);
  checks.add("model.parameter_consistency", consistency, 1e-12);

  UniformStream stream(derive_stream_seed(seed, 0xC0FFEE));
  double shift_mismatch = 0.0;
  double containment = 0.0;
  double same_sign = 0.0;
  for (const auto& pt : analytic_points()) {
    const ModelParams p = solve_params(pt.eta, pt.v, pt.kind);
    for (int i = 0; i < 20000; ++i) {
      const HiddenVariable lambda = sample_lambda(stream);
      const double alpha = (stream.next_unit() - 0.5) * 40.0;
      const HiddenVariable shifted{wrap_angle(lambda.phi - alpha), lambda.r};
      for (const DetectorSide side : {DetectorSide::One, DetectorSide::Two}) {
        if (detector(lambda, alpha, side, p) != detector(shifted, 0.0, side, p)) shift_mismatch += 1.0;
      }
      if (is_symmetrized(p.kind)) {
        const double w = boundary(p.kind, p.a, lambda.phi);
        containment = std::max(containment, p.b * p.c + (1.0 - p.c) * w - p.b);
      }
    }
    if (pt.v != 1.0) continue;
    // equal orientations: both-detected events must be opposite
    const int n = 1024;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const HiddenVariable lambda{constants::two_pi * i / n, static_cast<double>(j) / n};
        const Outcome o1 = detector(lambda, 0.0, DetectorSide::One, p);
        const Outcome o2 = detector(lambda, 0.0, DetectorSide::Two, p);
        if (detected(o1) && o1 == o2) same_sign += 1.0;
      }
    }
  }
  checks.add("model.locality_shift_invariance", shift_mismatch, 0.0);
  checks.add("model.error_band_containment", std::max(0.0, containment), 1e-15);
  checks.add("model.anticorrelation_grid", same_sign, 0.0);
}

template <Detector D>
void quadrature_checks(CheckList& checks, const D& detector) {
  using constants::pi;
  double marginal_dev = 0.0;
  double coincidence_dev = 0.0;
  for (const PatternKind kind : {PatternKind::SymmetrizedSinusoidal, PatternKind::SymmetrizedStaircase}) {
    const ModelParams p = solve_params(0.7, 0.8, kind);
    for (const double angle : {0.0, pi / 5.0, 4.0 * pi / 3.0}) {
      const JointProbabilities j = integrate_joint(p, angle, angle + 1.0, {}, detector);
      marginal_dev = std::max({marginal_dev, std::abs(j.efficiency_1() - p.eta), std::abs(j.efficiency_2() - p.eta)});
    }
    for (int i = 0; i < 8; ++i) {
      const double theta = constants::two_pi * i / 8.0 + 0.1;
      const ProbQuad got = integrate_joint(p, 0.25, 0.25 + theta, {}, detector).coincidences();
      const ProbQuad want = nonideal_probs(theta, p.eta, p.v, kind);
      coincidence_dev = std::max({coincidence_dev, std::abs(got.p_pp - want.p_pp), std::abs(got.p_pm - want.p_pm),
                                  std::abs(got.p_mp - want.p_mp), std::abs(got.p_mm - want.p_mm)});
    }
  }
  checks.add("quadrature.marginal_efficiency", marginal_dev, 1e-9);
  checks.add("quadrature.coincidence_probabilities", coincidence_dev, 1e-9);
}

template <Detector D>
void montecarlo_checks(CheckList& checks, const D& detector, std::uint64_t budget, std::uint64_t seed,
                       unsigned workers) {
  using constants::pi;
  std::uint64_t stream = 0;
  const auto next_seed = [&] { return derive_stream_seed(seed, 1000 + stream++); };
  const auto n = static_cast<double>(budget);

  struct Point {
    double eta;
    double v;
  };
  const Point points[] = {{0.7, 1.0}, {0.7, 0.8}, {1.0, 0.6}};
  const double thetas[] = {0.0, pi / 4.0, pi / 3.0, pi / 2.0, 3.0 * pi / 4.0, pi};

  bool conserved = true;
  for (const PatternKind kind : {PatternKind::SymmetrizedSinusoidal, PatternKind::SymmetrizedStaircase}) {
    for (const Point& pt : points) {
      const ModelParams p = solve_params(pt.eta, pt.v, kind);
      for (const double theta : thetas) {
        const RunConfig config{p, 0.0, theta, budget, next_seed(), default_chunk_size};
        const Tally t = run(config, detector, workers);
        conserved = conserved && t.cell_sum() == t.n_total && t.n_total == budget;
        const ProbQuad want = nonideal_probs(theta, p.eta, p.v, kind);
        const double single = p.eta * (1.0 - p.eta);
        const double z = std::max(
            {sigma_distance(t.n_pp / n, want.p_pp, binomial_sigma(want.p_pp, n)),
             sigma_distance(t.n_pm / n, want.p_pm, binomial_sigma(want.p_pm, n)),
             sigma_distance(t.n_mp / n, want.p_mp, binomial_sigma(want.p_mp, n)),
             sigma_distance(t.n_mm / n, want.p_mm, binomial_sigma(want.p_mm, n)),
             sigma_distance(t.n_single_1 / n, single, binomial_sigma(single, n)),
             sigma_distance(t.n_single_2 / n, single, binomial_sigma(single, n))});
        checks.add("mc.oracle_equivalence[" + config_label(kind, pt.eta, pt.v, theta) + "]", z, gate_sigmas,
                   "max |observed - expected| / sigma over the four coincidence cells and both singles rates");

        const IndependenceReport ind = independence_check(t, p);
        checks.add("mc.independence[" + config_label(kind, pt.eta, pt.v, theta) + "]", ind.deviation,
                   ind.threshold);

        const double corr = correlation(theta, p.v, kind);
        const double z_corr = sigma_distance(estimate(t).corr_hat, corr, oracle_corr_sigma(corr, p.eta, budget));
        checks.add("mc.conditional_correlation[" + config_label(kind, pt.eta, pt.v, theta) + "]", z_corr,
                   gate_sigmas);
      }
    }
  }

  {
    const ModelParams p = solve_params(0.7, 0.8, PatternKind::SymmetrizedSinusoidal);
    double worst = 0.0;
    for (const double angle : {0.0, pi / 5.0, pi / 2.0, 4.0 * pi / 3.0}) {
      const RunConfig config{p, angle, angle + 0.7, budget, next_seed(), default_chunk_size};
      const Tally t = run(config, detector, workers);
      const double eta_1 = static_cast<double>(t.coincidences() + t.n_single_1) / n;
      const double eta_2 = static_cast<double>(t.coincidences() + t.n_single_2) / n;
      const double sigma = binomial_sigma(p.eta, n);
      worst = std::max({worst, sigma_distance(eta_1, p.eta, sigma), sigma_distance(eta_2, p.eta, sigma)});
    }
    checks.add("mc.efficiency_isotropy", worst, gate_sigmas);
  }

  for (const PatternKind kind : {PatternKind::SymmetrizedSinusoidal, PatternKind::SymmetrizedStaircase}) {
    for (const Point pt : {Point{0.7, 0.8}, Point{1.0, 0.6}}) {
      const ModelParams p = solve_params(pt.eta, pt.v, kind);
      const RunConfig config{p, 1.3, 1.3, budget, next_seed(), default_chunk_size};
      const Tally t = run(config, detector, workers);
      const double recovered = -estimate(t).corr_hat;
      const double z = sigma_distance(recovered, pt.v, oracle_corr_sigma(pt.v, pt.eta, budget));
      checks.add("mc.visibility_recovery[" + config_label(kind, pt.eta, pt.v, 0.0) + "]", z, gate_sigmas);
    }
  }

  for (const PatternKind kind : {PatternKind::SymmetrizedSinusoidal, PatternKind::SymmetrizedStaircase,
                                 PatternKind::UnsymmetrizedSinusoidal}) {
    const ModelParams p = solve_params(0.7, 1.0, kind);
    const RunConfig config{p, 2.0, 2.0, budget, next_seed(), default_chunk_size};
    const Tally t = run(config, detector, workers);
    checks.add("mc.perfect_anticorrelation[" + std::string(model_name(kind)) + "]",
               static_cast<double>(t.n_pp + t.n_mm), 0.0);
  }

  {
    const ModelParams p = solve_params(0.7, 0.8, PatternKind::SymmetrizedStaircase);
    const RunConfig config{p, 0.1, 1.2, std::min<std::uint64_t>(budget, 300000), next_seed(), 4096};
    const Tally serial = run(config, detector, 1);
    const Tally parallel = run(config, detector, 4);
    checks.add("mc.worker_count_determinism", serial == parallel ? 0.0 : 1.0, 0.0);
  }

  {
    const ModelParams p = solve_params(0.7, 0.8, PatternKind::SymmetrizedSinusoidal);
    const double wrapped = 5.0 * pi / 3.0;
    const ProbQuad reduced = nonideal_probs(pi / 3.0, p.eta, p.v, p.kind);
    const ProbQuad direct = nonideal_probs(wrapped, p.eta, p.v, p.kind);
    checks.add("experiments.wraparound_oracle",
               std::max(std::abs(reduced.p_pp - direct.p_pp), std::abs(reduced.p_pm - direct.p_pm)), 1e-12);
    const RunConfig config{p, 0.0, wrapped, budget, next_seed(), default_chunk_size};
    const Tally t = run(config, detector, workers);
    checks.add("experiments.wraparound_mc",
               sigma_distance(t.n_pp / n, reduced.p_pp, binomial_sigma(reduced.p_pp, n)), gate_sigmas);
  }

  {
    const ModelParams p = solve_params(0.0, 0.5, PatternKind::SymmetrizedSinusoidal);
    const RunConfig config{p, 0.0, 1.0, std::min<std::uint64_t>(budget, 200000), next_seed(), default_chunk_size};
    const Tally t = run(config, detector, workers);
    conserved = conserved && t.cell_sum() == t.n_total;
    checks.add("mc.zero_efficiency_no_detections", static_cast<double>(t.n_total - t.n_none), 0.0);
    checks.skip("mc.zero_efficiency_correlation", "no coincidences at eta = 0");
  }
  checks.add("mc.tally_conservation", conserved ? 0.0 : 1.0, 0.0);
}

} // namespace detail

/// Runs every invariant check. pairs_budget is the number of pairs per Monte
/// Carlo configuration; gates widen as it shrinks.
template <Detector D = PatternDetector>
VerifyReport verify_suite(std::uint64_t pairs_budget, std::uint64_t seed, const D& detector = {},
                          unsigned workers = default_worker_count()) {
  if (pairs_budget < minimum_verify_budget) {
    throw InvalidConfig("verify_suite: pairs budget must be at least " + std::to_string(minimum_verify_budget));
  }
  detail::CheckList checks;
  detail::analytic_checks(checks);
  detail::model_checks(checks, detector, seed);
  detail::quadrature_checks(checks, detector);
  detail::montecarlo_checks(checks, detector, pairs_budget, seed, workers);
  return checks.take();
}

} // namespace lhvsim
