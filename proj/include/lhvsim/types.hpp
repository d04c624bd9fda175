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

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

namespace lhvsim {

namespace constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

/// Outer-to-inner step ratio of the staircase boundary.
inline constexpr double staircase_step_ratio = std::numbers::sqrt2 - 1.0;

/// Highest efficiency at which the sinusoidal model reaches full visibility.
inline constexpr double full_visibility_efficiency = 4.0 / (2.0 + std::numbers::pi);

/// Highest visibility of the sinusoidal model at perfect efficiency.
inline constexpr double perfect_efficiency_visibility = 2.0 / std::numbers::pi;

/// Efficiency above which the generalized Bell inequality can be violated.
inline constexpr double bell_efficiency_threshold = 8.0 / 9.0;

/// Efficiency above which the CHSH inequality can be violated.
inline constexpr double chsh_efficiency_threshold = 2.0 * (std::numbers::sqrt2 - 1.0);

/// Absolute tolerance used when comparing against feasibility frontiers.
inline constexpr double frontier_tolerance = 1e-12;

} // namespace constants

enum class PatternKind {
  UnsymmetrizedSinusoidal,
  SymmetrizedSinusoidal,
  SymmetrizedStaircase,
};

constexpr bool is_symmetrized(PatternKind kind) {
  return kind != PatternKind::UnsymmetrizedSinusoidal;
}

constexpr std::string_view model_name(PatternKind kind) {
  switch (kind) {
  case PatternKind::UnsymmetrizedSinusoidal:
    return "unsym";
  case PatternKind::SymmetrizedSinusoidal:
    return "sin";
  case PatternKind::SymmetrizedStaircase:
    return "line";
  }
  return "?";
}

constexpr std::optional<PatternKind> parse_model_name(std::string_view name) {
  if (name == "sin") return PatternKind::SymmetrizedSinusoidal;
  if (name == "line") return PatternKind::SymmetrizedStaircase;
  if (name == "unsym") return PatternKind::UnsymmetrizedSinusoidal;
  return std::nullopt;
}

enum class Outcome : int {
  Minus = -1,
  NoDetection = 0,
  Plus = 1,
};

constexpr bool detected(Outcome o) { return o != Outcome::NoDetection; }

/// +1 / -1 for a detection, nothing for a miss.
constexpr std::optional<int> numeric_value(Outcome o) {
  if (o == Outcome::NoDetection) return std::nullopt;
  return static_cast<int>(o);
}

constexpr Outcome flip(Outcome o) {
  switch (o) {
  case Outcome::Plus:
    return Outcome::Minus;
  case Outcome::Minus:
    return Outcome::Plus;
  case Outcome::NoDetection:
    break;
  }
  return Outcome::NoDetection;
}

enum class DetectorSide { One, Two };

/// Per-pair hidden state: spin orientation phi in [0, 2pi) and detection parameter r in [0, 1).
struct HiddenVariable {
  double phi = 0.0;
  double r = 0.0;

  friend bool operator==(const HiddenVariable&, const HiddenVariable&) = default;
};

/// A concrete detector-pattern model. Build through solve_params() so the
/// (a, b, c) fields stay consistent with (eta, v, kind).
struct ModelParams {
  double eta = 0.0;
  double v = 1.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  PatternKind kind = PatternKind::SymmetrizedSinusoidal;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

} // namespace lhvsim
