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

// Detector patterns of the local hidden-variable model.
//
// A pair carries lambda = (phi, r). Each detector shifts phi by its own
// orientation and reads its outcome off a fixed pattern in the (phi', r)
// rectangle. Symmetrized patterns split the r axis at 1/2:
//
//   side One   r in [0, 1/2): pattern half   r in [1/2, 1): band half
//   side Two   r in [0, 1/2): band half      r in [1/2, 1): pattern half
//
// with every sign on side Two flipped. The pattern half has a core of height
// w(phi') = a * shape(phi') carrying sign(sin phi'), topped by an error band up
// to W(phi') = b c + (1 - c) w(phi') whose sign is pi-periodic. The band half
// detects while r - 1/2 < b with sign(sin phi').

#pragma once

#include <cmath>
#include <string>

#include "lhvsim/analytic.hpp"
#include "lhvsim/angles.hpp"
#include "lhvsim/errors.hpp"
#include "lhvsim/types.hpp"

namespace lhvsim {

namespace detail {

inline std::string describe_point(double eta, double v, PatternKind kind) {
  return "(eta=" + std::to_string(eta) + ", v=" + std::to_string(v) +
         ", model=" + std::string(model_name(kind)) + ")";
}

} // namespace detail

/// Maps a target efficiency and visibility to pattern parameters (a, b, c).
///
/// Symmetrized kinds use
///   a = K v eta^2 / 4   (K = pi for sinusoidal, 2 sqrt2 for staircase)
///   b = eta - eta^2 / 2
///   c = eta (1 - v) / (2 - eta (1 + v))
///
/// The unsymmetrized pattern only exists at v = 1. Its two detectors have
/// different efficiencies (2a/pi and b); eta is taken as their geometric mean
/// with b = 1, which gives a = pi eta^2 / 2 and coincidences at rate eta^2.
inline ModelParams solve_params(double eta, double v, PatternKind kind) {
  if (!(eta >= 0.0 && eta <= 1.0) || !(v >= 0.0 && v <= 1.0)) {
    throw InfeasibleParameters("solve_params: eta and v must lie in [0, 1] " +
                               detail::describe_point(eta, v, kind));
  }
  if (eta == 1.0 && v == 1.0) {
    throw DegeneratePoint("solve_params: error fraction is 0/0 at " +
                          detail::describe_point(eta, v, kind));
  }
  if (!is_feasible(eta, v, kind)) {
    throw InfeasibleParameters("solve_params: outside the model's validity region " +
                               detail::describe_point(eta, v, kind));
  }

  ModelParams p;
  p.eta = eta;
  p.v = v;
  p.kind = kind;
  const double eta2 = eta * eta;
  switch (kind) {
  case PatternKind::UnsymmetrizedSinusoidal:
    p.a = constants::pi * eta2 / 2.0;
    p.b = 1.0;
    p.c = 0.0;
    break;
  case PatternKind::SymmetrizedSinusoidal:
    p.a = constants::pi * v * eta2 / 4.0;
    p.b = eta - eta2 / 2.0;
    p.c = eta * (1.0 - v) / (2.0 - eta * (1.0 + v));
    break;
  case PatternKind::SymmetrizedStaircase:
    p.a = v * eta2 / constants::sqrt2;
    p.b = eta - eta2 / 2.0;
    p.c = eta * (1.0 - v) / (2.0 - eta * (1.0 + v));
    break;
  }
  return p;
}

/// Staircase profile on the unit amplitude: sqrt2 - 1 on the outer quarters
/// of each half-turn, 1 on the middle half. u(0) takes the outer value.
inline double staircase_profile(double phi) {
  const double m = positive_mod(phi, constants::pi);
  const double quarter = constants::pi / 4.0;
  return (m > quarter && m < 3.0 * quarter) ? 1.0 : constants::staircase_step_ratio;
}

/// Height of the pattern core at shifted angle phi.
inline double boundary(PatternKind kind, double a, double phi) {
  if (kind == PatternKind::SymmetrizedStaircase) return a * staircase_profile(phi);
  return a * std::abs(std::sin(phi));
}

namespace detail {

// Sign carried by the core and the band half on side One: + on [0, pi).
inline Outcome half_turn_sign(double shifted) {
  return shifted < constants::pi ? Outcome::Plus : Outcome::Minus;
}

// Error-band sign on side One: + when (phi' mod pi) is in (0, pi/2].
inline Outcome error_band_sign(double shifted) {
  const double m = positive_mod(shifted, constants::pi);
  return (m > 0.0 && m <= constants::pi / 2.0) ? Outcome::Plus : Outcome::Minus;
}

// Side-One reading of the pattern half at height r in [0, 1/2).
inline Outcome pattern_half(double shifted, double r, const ModelParams& p) {
  const double w = boundary(p.kind, p.a, shifted);
  if (r <= w) return half_turn_sign(shifted);
  const double upper = p.b * p.c + (1.0 - p.c) * w;
  if (r <= upper) return error_band_sign(shifted);
  return Outcome::NoDetection;
}

// Side-One reading of the band half at height r in [0, 1/2).
inline Outcome band_half(double shifted, double r, const ModelParams& p) {
  return r < p.b ? half_turn_sign(shifted) : Outcome::NoDetection;
}

} // namespace detail

/// Outcome at one detector. Depends only on the hidden variable, the local
/// orientation, the side, and the model.
inline Outcome measure(const HiddenVariable& lambda, double detector_angle, DetectorSide side,
                       const ModelParams& params) {
  const double shifted = wrap_angle(lambda.phi - detector_angle);
  const double r = lambda.r;

  if (params.kind == PatternKind::UnsymmetrizedSinusoidal) {
    if (side == DetectorSide::One) {
      return r <= boundary(params.kind, params.a, shifted) ? detail::half_turn_sign(shifted)
                                                            : Outcome::NoDetection;
    }
    return flip(detail::band_half(shifted, r, params));
  }

  const bool lower = r < 0.5;
  const double local_r = lower ? r : r - 0.5;
  if (side == DetectorSide::One) {
    return lower ? detail::pattern_half(shifted, local_r, params)
                 : detail::band_half(shifted, local_r, params);
  }
  return flip(lower ? detail::band_half(shifted, local_r, params)
                    : detail::pattern_half(shifted, local_r, params));
}

struct MarginalEfficiencies {
  double eta_1 = 0.0;
  double eta_2 = 0.0;
};

/// Detector efficiencies of the unsymmetrized pattern: (2a/pi, b).
inline MarginalEfficiencies unsymmetrized_marginals(double a, double b) {
  if (!(a >= 0.0) || !(b <= 1.0) || a > b) {
    throw InfeasibleParameters("unsymmetrized_marginals: need 0 <= a <= b <= 1, got a=" +
                               std::to_string(a) + ", b=" + std::to_string(b));
  }
  return {2.0 * a / constants::pi, b};
}

/// Checks the range invariants of a parameter set (not the defining equations).
inline bool params_in_range(const ModelParams& p) {
  const double tol = constants::frontier_tolerance;
  const double b_cap = is_symmetrized(p.kind) ? 0.5 : 1.0;
  return p.a >= 0.0 && p.a <= p.b + tol && p.b <= b_cap + tol && p.c >= 0.0 &&
         p.c <= 1.0 + tol && (is_symmetrized(p.kind) || p.c == 0.0);
}

} // namespace lhvsim
