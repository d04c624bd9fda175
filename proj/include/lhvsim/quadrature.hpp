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

// Deterministic integration of a detector pair over the hidden-variable
// rectangle, treating the detectors as black boxes.
//
// For fixed phi the joint outcome is piecewise constant in r, so each class
// length is found exactly (to double resolution) by locating transitions with
// bisection. The resulting profile in phi is integrated with adaptive Simpson.
// Assumes no class appears, vanishes and reappears inside one coarse r cell.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "lhvsim/analytic.hpp"
#include "lhvsim/montecarlo.hpp"
#include "lhvsim/types.hpp"

namespace lhvsim {

/// Probabilities of the nine joint outcomes, indexed [side One][side Two]
/// with 0 = Plus, 1 = Minus, 2 = NoDetection.
struct JointProbabilities {
  std::array<std::array<double, 3>, 3> cell{};

  ProbQuad coincidences() const { return {cell[0][0], cell[0][1], cell[1][0], cell[1][1]}; }

  double efficiency_1() const {
    return cell[0][0] + cell[0][1] + cell[0][2] + cell[1][0] + cell[1][1] + cell[1][2];
  }

  double efficiency_2() const {
    return cell[0][0] + cell[1][0] + cell[2][0] + cell[0][1] + cell[1][1] + cell[2][1];
  }

  double total() const {
    double s = 0.0;
    for (const auto& row : cell)
      for (double x : row) s += x;
    return s;
  }
};

struct QuadratureOptions {
  int coarse_r_cells = 64;
  int initial_phi_cells = 64;
  /// Absolute acceptance threshold on each Simpson cell's error estimate.
  double cell_tolerance = 1e-14;
  int max_depth = 52;
};

namespace detail {

constexpr std::size_t outcome_index(Outcome o) {
  switch (o) {
  case Outcome::Plus:
    return 0;
  case Outcome::Minus:
    return 1;
  case Outcome::NoDetection:
    break;
  }
  return 2;
}

using ClassLengths = std::array<double, 9>;

inline void accumulate(ClassLengths& lhs, const ClassLengths& rhs) {
  for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += rhs[i];
}

template <Detector D>
class PairProfile {
public:
  PairProfile(const ModelParams& params, double angle_1, double angle_2, const D& detector,
              int coarse_cells)
      : params_(params), angle_1_(angle_1), angle_2_(angle_2), detector_(detector),
        coarse_cells_(coarse_cells) {}

  std::size_t joint_class(double phi, double r) const {
    const HiddenVariable lambda{phi, r};
    const auto first = detector_(lambda, angle_1_, DetectorSide::One, params_);
    const auto second = detector_(lambda, angle_2_, DetectorSide::Two, params_);
    return 3 * outcome_index(first) + outcome_index(second);
  }

  /// r-length of each joint class at fixed phi.
  ClassLengths operator()(double phi) const {
    ClassLengths lengths{};
    const double r_last = std::nextafter(1.0, 0.0);
    double run_start = 0.0;
    double lo = 0.0;
    std::size_t current = joint_class(phi, 0.0);
    for (int k = 1; k <= 2 * coarse_cells_; ++k) {
      // each coarse edge is probed from just below as well, so a run that
      // closes exactly at an edge is not hidden by an equal class above it
      const int i = (k + 1) / 2;
      const double edge = i == coarse_cells_ ? r_last : static_cast<double>(i) / coarse_cells_;
      const double hi_edge = k % 2 == 1 ? std::max(lo, std::nextafter(edge, 0.0)) : edge;
      std::size_t at_edge = joint_class(phi, hi_edge);
      while (at_edge != current) {
        // bisect [lo, hi] down to adjacent doubles: lo in `current`, hi not
        double a = lo;
        double b = hi_edge;
        for (;;) {
          const double mid = a + (b - a) / 2.0;
          if (mid <= a || mid >= b) break;
          if (joint_class(phi, mid) == current) a = mid;
          else b = mid;
        }
        lengths[current] += b - run_start;
        run_start = b;
        lo = b;
        current = joint_class(phi, b);
      }
      lo = hi_edge;
    }
    lengths[current] += 1.0 - run_start;
    return lengths;
  }

private:
  ModelParams params_;
  double angle_1_;
  double angle_2_;
  const D& detector_;
  int coarse_cells_;
};

template <typename F>
class AdaptiveSimpson {
public:
  AdaptiveSimpson(const F& f, double tolerance, int max_depth)
      : f_(f), tolerance_(tolerance), max_depth_(max_depth) {}

  ClassLengths integrate(double a, double b) const {
    const ClassLengths fa = f_(a);
    const ClassLengths fb = f_(b);
    const double m = (a + b) / 2.0;
    const ClassLengths fm = f_(m);
    return refine(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), max_depth_);
  }

private:
  static ClassLengths simpson(double a, double b, const ClassLengths& fa, const ClassLengths& fm,
                              const ClassLengths& fb) {
    ClassLengths out{};
    const double h = (b - a) / 6.0;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = h * (fa[i] + 4.0 * fm[i] + fb[i]);
    return out;
  }

  ClassLengths refine(double a, double b, const ClassLengths& fa, const ClassLengths& fm,
                      const ClassLengths& fb, const ClassLengths& whole, int depth) const {
    const double m = (a + b) / 2.0;
    const double lm = (a + m) / 2.0;
    const double rm = (m + b) / 2.0;
    const ClassLengths flm = f_(lm);
    const ClassLengths frm = f_(rm);
    const ClassLengths left = simpson(a, m, fa, flm, fm);
    const ClassLengths right = simpson(m, b, fm, frm, fb);

    double worst = 0.0;
    ClassLengths combined{};
    for (std::size_t i = 0; i < combined.size(); ++i) {
      const double diff = left[i] + right[i] - whole[i];
      worst = std::max(worst, std::abs(diff));
      combined[i] = left[i] + right[i] + diff / 15.0;
    }
    if (depth <= 0 || worst <= 15.0 * tolerance_ || lm <= a || rm >= b) return combined;

    ClassLengths out = refine(a, m, fa, flm, fm, left, depth - 1);
    accumulate(out, refine(m, b, fm, frm, fb, right, depth - 1));
    return out;
  }

  const F& f_;
  double tolerance_;
  int max_depth_;
};

} // namespace detail

/// Joint outcome probabilities of a detector pair at the given orientations,
/// integrated over the uniform (phi, r) rectangle.
template <Detector D = PatternDetector>
JointProbabilities integrate_joint(const ModelParams& params, double angle_1, double angle_2,
                                   const QuadratureOptions& options = {}, const D& detector = {}) {
  const detail::PairProfile<D> profile(params, angle_1, angle_2, detector, options.coarse_r_cells);
  const detail::AdaptiveSimpson integrator(profile, options.cell_tolerance, options.max_depth);

  detail::ClassLengths area{};
  const double width = constants::two_pi / options.initial_phi_cells;
  for (int i = 0; i < options.initial_phi_cells; ++i) {
    const double a = i * width;
    const double b = i + 1 == options.initial_phi_cells ? constants::two_pi : (i + 1) * width;
    detail::accumulate(area, integrator.integrate(a, b));
  }

  JointProbabilities out;
  for (std::size_t i = 0; i < 9; ++i) out.cell[i / 3][i % 3] = area[i] / constants::two_pi;
  return out;
}

} // namespace lhvsim
