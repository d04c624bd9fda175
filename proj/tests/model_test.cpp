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

#include "lhvsim/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace lhvsim;

namespace {

constexpr double pi = constants::pi;
constexpr auto kSin = PatternKind::SymmetrizedSinusoidal;
constexpr auto kLine = PatternKind::SymmetrizedStaircase;
constexpr auto kUnsym = PatternKind::UnsymmetrizedSinusoidal;

} // namespace

TEST(SolveParams, Examples) {
  const ModelParams zero = solve_params(0.0, 1.0, kSin);
  EXPECT_EQ(zero.a, 0.0);
  EXPECT_EQ(zero.b, 0.0);
  EXPECT_EQ(zero.c, 0.0);

  const ModelParams p = solve_params(0.7, 1.0, kSin);
  EXPECT_NEAR(p.a, 0.38484510006474967, 1e-15);
  EXPECT_NEAR(p.b, 0.455, 1e-15);
  EXPECT_EQ(p.c, 0.0);

  // a = b exactly at eta = 4 / (2 + pi)
  const ModelParams edge = solve_params(4.0 / (2.0 + pi), 1.0, kSin);
  EXPECT_NEAR(edge.a, 0.47535113068520060, 1e-14);
  EXPECT_NEAR(edge.b, 0.47535113068520060, 1e-14);

  const ModelParams full = solve_params(1.0, 2.0 / pi, kSin);
  EXPECT_NEAR(full.a, 0.5, 1e-15);
  EXPECT_NEAR(full.b, 0.5, 1e-15);
  EXPECT_NEAR(full.c, 1.0, 1e-14);

  const ModelParams line = solve_params(0.9, 0.7, kLine);
  EXPECT_NEAR(line.a, 0.7 * 0.81 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(line.c, 0.9 * 0.3 / (2.0 - 0.9 * 1.7), 1e-15);
}

TEST(SolveParams, Errors) {
  EXPECT_THROW(solve_params(1.0, 1.0, kSin), DegeneratePoint);
  EXPECT_THROW(solve_params(1.0, 1.0, kLine), InfeasibleParameters);
  EXPECT_THROW(solve_params(0.9, 0.9, kSin), InfeasibleParameters);
  EXPECT_THROW(solve_params(1.0, 0.65, kSin), InfeasibleParameters);
  EXPECT_NO_THROW(solve_params(1.0, 0.65, kLine));
  EXPECT_THROW(solve_params(1.2, 0.5, kSin), InfeasibleParameters);
  EXPECT_THROW(solve_params(0.5, -0.1, kSin), InfeasibleParameters);
  EXPECT_THROW(solve_params(0.5, 0.9, kUnsym), InfeasibleParameters);
  EXPECT_THROW(solve_params(0.85, 1.0, kUnsym), InfeasibleParameters);
}

TEST(SolveParams, DefiningEquationsHoldOnFeasibleGrid) {
  for (PatternKind kind : {kSin, kLine}) {
    const double k = kind == kLine ? 1.0 / std::sqrt(2.0) : 2.0 / pi;
    for (int i = 0; i <= 60; ++i) {
      for (int j = 0; j <= 60; ++j) {
        const double eta = i / 60.0;
        const double v = j / 60.0;
        if (!is_feasible(eta, v, kind)) {
          EXPECT_THROW(solve_params(eta, v, kind), InfeasibleParameters);
          continue;
        }
        const ModelParams p = solve_params(eta, v, kind);
        EXPECT_TRUE(params_in_range(p));
        const double error_free = p.b * p.c + k * p.a * (1.0 - p.c);
        EXPECT_NEAR(p.b + error_free, eta, 1e-12);
        EXPECT_NEAR(2.0 * error_free, eta * eta, 1e-12);
        if (eta > 0.0) {
          const double vis = kind == kLine ? std::sqrt(2.0) * p.a / (eta * eta) : 4.0 * p.a / (pi * eta * eta);
          EXPECT_NEAR(vis, v, 1e-12);
        }
        // round trip through the stored (eta, v)
        EXPECT_EQ(solve_params(p.eta, p.v, p.kind), p);
      }
    }
  }
}

TEST(SolveParams, Unsymmetrized) {
  const ModelParams p = solve_params(0.7, 1.0, kUnsym);
  EXPECT_NEAR(p.a, pi * 0.49 / 2.0, 1e-15);
  EXPECT_EQ(p.b, 1.0);
  EXPECT_EQ(p.c, 0.0);
  const MarginalEfficiencies m = unsymmetrized_marginals(p.a, p.b);
  EXPECT_NEAR(m.eta_1 * m.eta_2, 0.49, 1e-15);
}

TEST(UnsymmetrizedMarginals, Examples) {
  const auto half = unsymmetrized_marginals(0.5, 0.5);
  EXPECT_NEAR(half.eta_1, 0.3183098861837907, 1e-15);
  EXPECT_DOUBLE_EQ(half.eta_2, 0.5);
  const auto none = unsymmetrized_marginals(0.0, 0.3);
  EXPECT_DOUBLE_EQ(none.eta_1, 0.0);
  EXPECT_DOUBLE_EQ(none.eta_2, 0.3);
  EXPECT_NEAR(unsymmetrized_marginals(0.2, 0.4).eta_1, 0.12732395447351627, 1e-15);
  EXPECT_THROW(unsymmetrized_marginals(0.5, 0.4), InfeasibleParameters);
}

TEST(Boundary, Examples) {
  EXPECT_DOUBLE_EQ(boundary(kSin, 0.4, pi / 2), 0.4);
  EXPECT_DOUBLE_EQ(boundary(kLine, 0.4, pi / 2), 0.4);
  EXPECT_NEAR(boundary(kLine, 0.4, pi / 8), 0.4 * (std::sqrt(2.0) - 1.0), 1e-16);
  EXPECT_NEAR(boundary(kLine, 0.4, pi / 8), 0.1657, 1e-4);
  EXPECT_DOUBLE_EQ(boundary(kLine, 0.4, 0.0), 0.4 * (std::sqrt(2.0) - 1.0));
  EXPECT_DOUBLE_EQ(boundary(kLine, 0.4, pi + pi / 2), 0.4);
  EXPECT_DOUBLE_EQ(boundary(kLine, 0.4, 7 * pi / 8), 0.4 * (std::sqrt(2.0) - 1.0));
}

TEST(Measure, Examples) {
  const ModelParams p = solve_params(0.7, 1.0, kSin);
  EXPECT_EQ(measure({pi / 2, 0.1}, 0.0, DetectorSide::One, p), Outcome::Plus);
  EXPECT_EQ(measure({0.3, 0.9}, 0.3, DetectorSide::One, p), Outcome::Plus);
  EXPECT_EQ(measure({0.3, 0.4}, 0.3, DetectorSide::Two, p), Outcome::Minus);
  EXPECT_EQ(measure({pi, 0.49}, 0.0, DetectorSide::One, p), Outcome::NoDetection);
  // band half above b
  EXPECT_EQ(measure({0.3, 0.5 + 0.46}, 0.3, DetectorSide::One, p), Outcome::NoDetection);
  EXPECT_EQ(measure({4.0, 0.1}, 0.0, DetectorSide::One, p), Outcome::Minus);
}

TEST(Measure, ErrorBandSigns) {
  const ModelParams p = solve_params(0.7, 0.8, kSin);
  // phi' = 0.2: w = a sin(0.2), W = bc + (1 - c) w; pick r between them
  const double w = p.a * std::sin(0.2);
  const double upper = p.b * p.c + (1.0 - p.c) * w;
  const double r = (w + upper) / 2.0;
  EXPECT_EQ(measure({0.2, r}, 0.0, DetectorSide::One, p), Outcome::Plus);
  EXPECT_EQ(measure({0.2 + pi, r}, 0.0, DetectorSide::One, p), Outcome::Plus);
  EXPECT_EQ(measure({pi - 0.2, r}, 0.0, DetectorSide::One, p), Outcome::Minus);
  EXPECT_EQ(measure({2 * pi - 0.2, r}, 0.0, DetectorSide::One, p), Outcome::Minus);
  // side Two reads the same region from the upper half with flipped signs
  EXPECT_EQ(measure({0.2, r + 0.5}, 0.0, DetectorSide::Two, p), Outcome::Minus);
  EXPECT_EQ(measure({pi - 0.2, r + 0.5}, 0.0, DetectorSide::Two, p), Outcome::Plus);
}

TEST(Measure, UnsymmetrizedLayout) {
  const ModelParams p = solve_params(0.7, 1.0, kUnsym);
  EXPECT_EQ(measure({pi / 2, 0.5}, 0.0, DetectorSide::One, p), Outcome::Plus);
  EXPECT_EQ(measure({3 * pi / 2, 0.5}, 0.0, DetectorSide::One, p), Outcome::Minus);
  EXPECT_EQ(measure({0.01, 0.9}, 0.0, DetectorSide::One, p), Outcome::NoDetection);
  EXPECT_EQ(measure({0.01, 0.9}, 0.0, DetectorSide::Two, p), Outcome::Minus);
  EXPECT_EQ(measure({4.0, 0.99}, 0.0, DetectorSide::Two, p), Outcome::Plus);
}

TEST(Measure, LocalityShiftInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> phi_dist(0.0, 2 * pi);
  std::uniform_real_distribution<double> r_dist(0.0, 1.0);
  std::uniform_real_distribution<double> angle_dist(-50.0, 50.0);
  for (PatternKind kind : {kSin, kLine, kUnsym}) {
    const ModelParams p = solve_params(0.7, kind == kUnsym ? 1.0 : 0.8, kind);
    for (int i = 0; i < 20000; ++i) {
      const HiddenVariable lambda{phi_dist(rng), r_dist(rng)};
      const double alpha = angle_dist(rng);
      const HiddenVariable shifted{wrap_angle(lambda.phi - alpha), lambda.r};
      for (DetectorSide side : {DetectorSide::One, DetectorSide::Two}) {
        ASSERT_EQ(measure(lambda, alpha, side, p), measure(shifted, 0.0, side, p));
      }
    }
  }
}

TEST(Measure, PerfectAnticorrelationAtEqualAngles) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (PatternKind kind : {kSin, kLine, kUnsym}) {
    for (double eta : {0.3, 0.7, 0.75}) {
      const ModelParams p = solve_params(eta, 1.0, kind);
      const int n = 512;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const HiddenVariable lambda{2 * pi * i / n, static_cast<double>(j) / n};
          const Outcome o1 = measure(lambda, 0.0, DetectorSide::One, p);
          const Outcome o2 = measure(lambda, 0.0, DetectorSide::Two, p);
          if (detected(o1) && detected(o2)) {
            ASSERT_EQ(o1, flip(o2));
          }
        }
      }
      for (int i = 0; i < 50000; ++i) {
        const HiddenVariable lambda{2 * pi * unit(rng), unit(rng)};
        const double angle = 10.0 * unit(rng);
        const Outcome o1 = measure(lambda, angle, DetectorSide::One, p);
        const Outcome o2 = measure(lambda, angle, DetectorSide::Two, p);
        if (detected(o1) && detected(o2)) {
          ASSERT_EQ(o1, flip(o2));
        }
      }
    }
  }
}

TEST(Measure, ErrorBandStaysInsideBandEnvelope) {
  for (PatternKind kind : {kSin, kLine}) {
    for (int i = 1; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const double eta = i / 20.0;
        const double v = j / 20.0;
        if (!is_feasible(eta, v, kind)) continue;
        const ModelParams p = solve_params(eta, v, kind);
        for (int k = 0; k < 400; ++k) {
          const double w = boundary(kind, p.a, 2 * pi * k / 400);
          EXPECT_LE(p.b * p.c + (1.0 - p.c) * w, p.b + 1e-15);
          EXPECT_GE(p.b * p.c + (1.0 - p.c) * w, w - 1e-15);
        }
      }
    }
  }
}

TEST(Outcome, NumericValue) {
  EXPECT_EQ(numeric_value(Outcome::Plus), 1);
  EXPECT_EQ(numeric_value(Outcome::Minus), -1);
  EXPECT_FALSE(numeric_value(Outcome::NoDetection).has_value());
}

TEST(Angles, WrapIsNonNegative) {
  EXPECT_LT(wrap_angle(-1e-300), 2 * pi);
  EXPECT_GE(wrap_angle(-1e-17), 0.0);
  EXPECT_LT(wrap_angle(-1e-17), 2 * pi);
  EXPECT_NEAR(wrap_angle(-pi / 2), 3 * pi / 2, 1e-15);
  EXPECT_NEAR(fold_separation(5 * pi / 3), pi / 3, 1e-14);
  EXPECT_NEAR(fold_separation(-pi / 3), pi / 3, 1e-15);
}
