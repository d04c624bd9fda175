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

// Closed-form targets for the model: singlet and nonideal coincidence
// probabilities, correlation functions, Bell/CHSH evaluators, and the
// (eta, v) feasibility classification.
//
// Every function taking a detector separation theta accepts any real value
// and folds it into [0, pi]; both cos and the piecewise-linear correlation
// are even and 2pi-periodic.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "lhvsim/angles.hpp"
#include "lhvsim/errors.hpp"
#include "lhvsim/types.hpp"

namespace lhvsim {

struct ProbQuad {
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;

  double sum() const { return p_pp + p_pm + p_mp + p_mm; }

  /// Unnormalized correlation p_pp - p_pm - p_mp + p_mm.
  double signed_sum() const { return p_pp - p_pm - p_mp + p_mm; }

  friend bool operator==(const ProbQuad&, const ProbQuad&) = default;
};

/// Detector orientations entering the CHSH combination. phi_a/phi_b belong to
/// the first detector, phi_c/phi_d to the second.
struct ChshAngles {
  double phi_a = 0.0;
  double phi_b = constants::pi / 2.0;
  double phi_c = constants::pi / 4.0;
  double phi_d = 3.0 * constants::pi / 4.0;

  friend bool operator==(const ChshAngles&, const ChshAngles&) = default;
};

/// The orientations that maximize the quantum CHSH value.
inline ChshAngles standard_chsh_angles() { return ChshAngles{}; }

struct RegionVerdict {
  bool sin_feasible = false;
  bool line_feasible = false;
  bool chsh_violated = false;
  bool gap = false;

  friend bool operator==(const RegionVerdict&, const RegionVerdict&) = default;
};

namespace detail {

inline void require_efficiency(double eta, const char* where) {
  if (!(eta > 0.0) || eta > 1.0) {
    throw DomainError(std::string(where) + ": efficiency must lie in (0, 1], got " +
                      std::to_string(eta));
  }
}

inline double visibility_constant(PatternKind kind) {
  return kind == PatternKind::SymmetrizedStaircase ? 2.0 * constants::sqrt2 : constants::pi;
}

} // namespace detail

inline ProbQuad qm_probs(double theta) {
  const double c = std::cos(fold_separation(theta));
  const double same = (1.0 - c) / 4.0;
  const double opposite = (1.0 + c) / 4.0;
  return {same, opposite, opposite, same};
}

/// Piecewise-linear chord of cos through (0, 1), (pi/4, 1/sqrt2),
/// (3pi/4, -1/sqrt2), (pi, -1).
inline double line_g(double theta) {
  using constants::inv_sqrt2;
  using constants::pi;
  const double t = fold_separation(theta);
  const double quarter = pi / 4.0;
  if (t <= quarter) return 1.0 - (1.0 - inv_sqrt2) * (t / quarter);
  if (t <= 3.0 * quarter) return inv_sqrt2 - 2.0 * inv_sqrt2 * ((t - quarter) / (2.0 * quarter));
  return -inv_sqrt2 - (1.0 - inv_sqrt2) * ((t - 3.0 * quarter) / quarter);
}

/// The shape of the correlation curve: cos for sinusoidal patterns, line_g for the staircase.
inline double correlation_shape(double theta, PatternKind kind) {
  return kind == PatternKind::SymmetrizedStaircase ? line_g(theta)
                                                   : std::cos(fold_separation(theta));
}

/// Conditional correlation with singles removed: -v * shape(theta).
inline double correlation(double theta, double v, PatternKind kind) {
  return -v * correlation_shape(theta, kind);
}

/// Coincidence probabilities (both particles detected).
inline ProbQuad nonideal_probs(double theta, double eta, double v, PatternKind kind) {
  const double g = v * correlation_shape(theta, kind);
  const double eta2 = eta * eta;
  const double same = eta2 * (1.0 - g) / 4.0;
  const double opposite = eta2 * (1.0 + g) / 4.0;
  return {same, opposite, opposite, same};
}

/// Single-detector probability of each sign.
inline double marginal_prob(double eta) { return eta / 2.0; }

inline double chsh_value(double v, PatternKind kind, const ChshAngles& angles) {
  const auto e = [&](double first, double second) { return correlation(second - first, v, kind); };
  return std::abs(e(angles.phi_a, angles.phi_c) - e(angles.phi_a, angles.phi_d)) +
         std::abs(e(angles.phi_b, angles.phi_c) + e(angles.phi_b, angles.phi_d));
}

/// Right-hand side of the efficiency-corrected CHSH inequality, 4/eta - 2.
inline double chsh_bound(double eta) {
  detail::require_efficiency(eta, "chsh_bound");
  return 4.0 / eta - 2.0;
}

/// Slack of the efficiency-corrected Bell inequality
///   |E(ab) - E(ac)| <= 4/eta - 3 + E(bc)
/// using the sinusoidal correlation. Negative slack is a violation.
inline double bell_generalized_slack(double eta, double v, double theta_ab, double theta_ac,
                                     double theta_bc) {
  detail::require_efficiency(eta, "bell_generalized_slack");
  const auto e = [&](double theta) { return correlation(theta, v, PatternKind::SymmetrizedSinusoidal); };
  return (4.0 / eta - 3.0 + e(theta_bc)) - std::abs(e(theta_ab) - e(theta_ac));
}

/// Highest efficiency usable by the unsymmetrized model, where its amplitude reaches 1.
inline double unsymmetrized_max_efficiency() { return std::sqrt(2.0 / constants::pi); }

/// Largest visibility a pattern supports at efficiency eta.
///
/// Symmetrized kinds: min(1, (4/eta - 2) / K), K = pi (sinusoidal) or 2 sqrt2
/// (staircase). The unsymmetrized pattern has no error band, so it reports 1
/// inside its efficiency range and 0 outside it.
inline double max_visibility(double eta, PatternKind kind) {
  detail::require_efficiency(eta, "max_visibility");
  if (kind == PatternKind::UnsymmetrizedSinusoidal) {
    return eta <= unsymmetrized_max_efficiency() + constants::frontier_tolerance ? 1.0 : 0.0;
  }
  return std::min(1.0, (4.0 / eta - 2.0) / detail::visibility_constant(kind));
}

/// Whether the pattern can realize (eta, v). Closed frontier, (1, 1) excluded.
inline bool is_feasible(double eta, double v, PatternKind kind) {
  if (!(eta >= 0.0 && eta <= 1.0 && v >= 0.0 && v <= 1.0)) return false;
  if (eta == 1.0 && v == 1.0) return false;
  if (kind == PatternKind::UnsymmetrizedSinusoidal) {
    return v == 1.0 && eta <= unsymmetrized_max_efficiency() + constants::frontier_tolerance;
  }
  if (eta == 0.0) return true;
  return v <= max_visibility(eta, kind) + constants::frontier_tolerance;
}

inline RegionVerdict classify_region(double eta, double v) {
  detail::require_efficiency(eta, "classify_region");
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError("classify_region: visibility must lie in [0, 1], got " + std::to_string(v));
  }
  RegionVerdict verdict;
  verdict.sin_feasible = is_feasible(eta, v, PatternKind::SymmetrizedSinusoidal);
  verdict.line_feasible = is_feasible(eta, v, PatternKind::SymmetrizedStaircase);
  // 2 sqrt2 v > 4/eta - 2, compared on the visibility scale so the verdict is
  // the exact complement of staircase feasibility away from (1, 1).
  verdict.chsh_violated =
      v > chsh_bound(eta) / (2.0 * constants::sqrt2) + constants::frontier_tolerance;
  verdict.gap = !verdict.sin_feasible && !verdict.chsh_violated;
  return verdict;
}

} // namespace lhvsim
