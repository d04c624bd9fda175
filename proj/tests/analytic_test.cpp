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

#include "lhvsim/analytic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace lhvsim;

namespace {

constexpr double pi = constants::pi;
constexpr auto kSin = PatternKind::SymmetrizedSinusoidal;
constexpr auto kLine = PatternKind::SymmetrizedStaircase;

// Staircase correlation built independently from the boundary profile:
// g(theta) = 1 - (2 sqrt2 / pi) * integral_0^theta u, summed over the
// quarter-turn steps where u is constant.
double g_from_profile(double theta) {
  const auto u = [](double phi) {
    const double m = std::fmod(phi, pi);
    return (m > pi / 4 && m < 3 * pi / 4) ? 1.0 : std::sqrt(2.0) - 1.0;
  };
  double integral = 0.0;
  for (int k = 0; k * pi / 4 < theta; ++k) {
    const double lo = k * pi / 4;
    const double hi = std::min(theta, (k + 1) * pi / 4);
    integral += u((lo + hi) / 2) * (hi - lo);
  }
  return 1.0 - (2.0 * std::sqrt(2.0) / pi) * integral;
}

} // namespace

TEST(QmProbs, Examples) {
  const ProbQuad at0 = qm_probs(0.0);
  EXPECT_DOUBLE_EQ(at0.p_pp, 0.0);
  EXPECT_DOUBLE_EQ(at0.p_pm, 0.5);
  EXPECT_DOUBLE_EQ(at0.p_mp, 0.5);
  EXPECT_DOUBLE_EQ(at0.p_mm, 0.0);

  const ProbQuad right = qm_probs(pi / 2);
  for (double p : {right.p_pp, right.p_pm, right.p_mp, right.p_mm}) EXPECT_NEAR(p, 0.25, 1e-16);

  const ProbQuad third = qm_probs(pi / 3);
  EXPECT_NEAR(third.p_pp, 0.125, 1e-15);
  EXPECT_NEAR(third.p_pm, 0.375, 1e-15);
}

TEST(NonidealProbs, Examples) {
  EXPECT_NEAR(nonideal_probs(pi / 3, 0.7, 1.0, kSin).p_pp, 0.061250, 1e-15);
  EXPECT_NEAR(nonideal_probs(0.0, 0.6, 0.9, kSin).p_pp, 0.36 * 0.1 / 4, 1e-16);
  EXPECT_NEAR(nonideal_probs(pi / 4, 1.0, 1.0, kLine).p_pp, 0.0732233047033631, 1e-15);
}

TEST(NonidealProbs, NormalizationSymmetryAndCorrelationIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> theta_dist(-20.0, 20.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double theta = theta_dist(rng);
    const double eta = 0.05 + 0.95 * unit(rng);
    const double v = unit(rng);
    EXPECT_NEAR(qm_probs(theta).sum(), 1.0, 1e-15);
    for (PatternKind kind : {kSin, kLine, PatternKind::UnsymmetrizedSinusoidal}) {
      const ProbQuad q = nonideal_probs(theta, eta, v, kind);
      EXPECT_NEAR(q.sum(), eta * eta, 1e-15);
      EXPECT_EQ(q.p_pp, q.p_mm);
      EXPECT_EQ(q.p_pm, q.p_mp);
      EXPECT_GE(q.p_pp, 0.0);
      EXPECT_NEAR(q.signed_sum() / (eta * eta), correlation(theta, v, kind), 1e-12);
    }
  }
}

TEST(MarginalProb, Examples) {
  EXPECT_DOUBLE_EQ(marginal_prob(1.0), 0.5);
  EXPECT_DOUBLE_EQ(marginal_prob(0.7), 0.35);
  EXPECT_DOUBLE_EQ(marginal_prob(0.0), 0.0);
}

TEST(Correlation, Examples) {
  EXPECT_DOUBLE_EQ(correlation(0.0, 1.0, kSin), -1.0);
  EXPECT_NEAR(correlation(pi / 2, 0.97, kSin), 0.0, 1e-16);
  EXPECT_NEAR(correlation(3 * pi / 4, 1.0, kLine), 0.7071067811865476, 1e-15);
}

TEST(Correlation, EvenAndPeriodic) {
  for (double t : {0.1, 1.0, 2.5, 3.0}) {
    for (PatternKind kind : {kSin, kLine}) {
      EXPECT_NEAR(correlation(-t, 0.8, kind), correlation(t, 0.8, kind), 1e-15);
      EXPECT_NEAR(correlation(t + 2 * pi, 0.8, kind), correlation(t, 0.8, kind), 1e-14);
      EXPECT_NEAR(correlation(2 * pi - t, 0.8, kind), correlation(t, 0.8, kind), 1e-14);
    }
  }
}

TEST(LineG, Knots) {
  EXPECT_DOUBLE_EQ(line_g(0.0), 1.0);
  EXPECT_NEAR(line_g(pi / 4), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(line_g(pi / 2), 0.0, 1e-15);
  EXPECT_NEAR(line_g(3 * pi / 4), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(line_g(pi), -1.0);
}

TEST(LineG, MatchesIntegralOfStaircaseProfile) {
  for (double t : {pi / 8, pi / 3, pi / 2, 2.0, 3 * pi / 4, 2.9}) {
    EXPECT_NEAR(line_g(t), g_from_profile(t), 1e-14) << "theta=" << t;
  }
}

TEST(LineG, ChordGapAndSlopeRatio) {
  double gap = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double t = pi * i / 20000;
    gap = std::max(gap, std::abs(line_g(t) - std::cos(t)));
  }
  // mpmath scan of the same chord: max gap 0.0703776
  EXPECT_NEAR(gap, 0.0703776224963061, 1e-8);
  EXPECT_LE(gap, 0.076);

  const double q = pi / 4;
  const double outer = (line_g(0.0) - line_g(q)) / q;
  const double inner = (line_g(q) - line_g(2 * q)) / q;
  EXPECT_NEAR(outer / inner, std::sqrt(2.0) - 1.0, 1e-12);
}

TEST(ChshValue, Examples) {
  EXPECT_NEAR(chsh_value(1.0, kSin, standard_chsh_angles()), 2 * std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(chsh_value(0.0, kSin, ChshAngles{0.3, 1.1, 2.0, -0.4}), 0.0);
  EXPECT_NEAR(chsh_value(1.0, kLine, standard_chsh_angles()), 2 * std::sqrt(2.0), 1e-14);
}

TEST(ChshBound, ExamplesAndDomain) {
  EXPECT_DOUBLE_EQ(chsh_bound(1.0), 2.0);
  EXPECT_NEAR(chsh_bound(constants::chsh_efficiency_threshold), 2 * std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(chsh_bound(0.5), 6.0);
  EXPECT_THROW(chsh_bound(0.0), DomainError);
  EXPECT_THROW(chsh_bound(-0.1), DomainError);
}

TEST(BellSlack, Examples) {
  const double a = pi / 3, b = 2 * pi / 3, c = pi / 3;
  EXPECT_NEAR(bell_generalized_slack(1.0, 1.0, a, b, c), -0.5, 1e-15);
  EXPECT_NEAR(bell_generalized_slack(8.0 / 9.0, 1.0, a, b, c), 0.0, 1e-12);
  for (double eta : {0.1, 0.5, 0.9, 1.0}) EXPECT_NEAR(bell_generalized_slack(eta, 0.0, a, b, c), 4 / eta - 3, 1e-15);
  EXPECT_LT(bell_generalized_slack(0.95, 1.0, a, b, c), 0.0);
  EXPECT_THROW(bell_generalized_slack(0.0, 1.0, a, b, c), DomainError);
}

TEST(MaxVisibility, Examples) {
  EXPECT_NEAR(max_visibility(1.0, kSin), 0.6366197723675814, 1e-15);
  EXPECT_NEAR(max_visibility(4.0 / (2.0 + pi), kSin), 1.0, 1e-15);
  EXPECT_NEAR(max_visibility(1.0, kLine), 0.7071067811865476, 1e-15);
  EXPECT_THROW(max_visibility(0.0, kSin), DomainError);
}

TEST(MaxVisibility, StaircaseFrontierIsChshFrontier) {
  for (int i = 1; i <= 100; ++i) {
    const double eta = constants::chsh_efficiency_threshold + (1.0 - constants::chsh_efficiency_threshold) * i / 100;
    const double vmax = max_visibility(eta, kLine);
    EXPECT_NEAR(vmax, std::min(1.0, chsh_bound(eta) / (2 * std::sqrt(2.0))), 1e-12);
    EXPECT_NEAR(chsh_value(vmax, kLine, standard_chsh_angles()), chsh_bound(eta), 1e-12);
  }
}

TEST(MaxVisibility, MonotoneAndModelNeverViolatesChsh) {
  for (PatternKind kind : {kSin, kLine}) {
    double previous = 2.0;
    for (int i = 1; i <= 500; ++i) {
      const double eta = i / 500.0;
      const double vmax = max_visibility(eta, kind);
      EXPECT_LE(vmax, previous);
      previous = vmax;
      for (int j = 0; j <= 50; ++j) {
        const double v = j / 50.0;
        if (is_feasible(eta, v, kind)) {
          EXPECT_LE(chsh_value(v, kind, standard_chsh_angles()), chsh_bound(eta) + 1e-12);
        }
      }
    }
  }
}

TEST(Constants, MatchClosedForms) {
  EXPECT_NEAR(constants::full_visibility_efficiency, 0.7779690592966854, 1e-15);
  EXPECT_NEAR(constants::perfect_efficiency_visibility, 0.6366197723675814, 1e-15);
  EXPECT_NEAR(constants::bell_efficiency_threshold, 0.8888888888888888, 1e-15);
  EXPECT_NEAR(constants::chsh_efficiency_threshold, 0.8284271247461901, 1e-15);
}

TEST(ClassifyRegion, Examples) {
  const RegionVerdict low = classify_region(0.5, 1.0);
  EXPECT_TRUE(low.sin_feasible);
  EXPECT_TRUE(low.line_feasible);
  EXPECT_FALSE(low.chsh_violated);
  EXPECT_FALSE(low.gap);

  const RegionVerdict high = classify_region(0.9, 0.9);
  EXPECT_FALSE(high.sin_feasible);
  EXPECT_FALSE(high.line_feasible);
  EXPECT_TRUE(high.chsh_violated);
  EXPECT_FALSE(high.gap);

  const RegionVerdict gap = classify_region(1.0, 0.65);
  EXPECT_FALSE(gap.sin_feasible);
  EXPECT_TRUE(gap.line_feasible);
  EXPECT_FALSE(gap.chsh_violated);
  EXPECT_TRUE(gap.gap);

  const RegionVerdict corner = classify_region(1.0, 1.0);
  EXPECT_FALSE(corner.sin_feasible);
  EXPECT_FALSE(corner.line_feasible);
  EXPECT_TRUE(corner.chsh_violated);
}

TEST(ClassifyRegion, FrontiersAreClosed) {
  EXPECT_TRUE(classify_region(1.0, 2.0 / pi).sin_feasible);
  const double eta = 0.9;
  const double frontier = chsh_bound(eta) / (2 * std::sqrt(2.0));
  const RegionVerdict on = classify_region(eta, frontier);
  EXPECT_TRUE(on.line_feasible);
  EXPECT_FALSE(on.chsh_violated);
  const RegionVerdict above = classify_region(eta, frontier + 1e-9);
  EXPECT_FALSE(above.line_feasible);
  EXPECT_TRUE(above.chsh_violated);
}

TEST(ClassifyRegion, InvariantsOnRandomPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double eta = 1e-3 + (1.0 - 1e-3) * unit(rng);
    const double v = unit(rng);
    const RegionVerdict r = classify_region(eta, v);
    EXPECT_EQ(r.gap, !r.sin_feasible && !r.chsh_violated);
    if (r.chsh_violated) {
      EXPECT_FALSE(r.line_feasible);
    }
    if (r.sin_feasible) {
      EXPECT_TRUE(r.line_feasible);
    }
    // downward closed in v
    const double lower = v * unit(rng);
    const RegionVerdict below = classify_region(eta, lower);
    if (r.sin_feasible) {
      EXPECT_TRUE(below.sin_feasible);
    }
    if (r.line_feasible) {
      EXPECT_TRUE(below.line_feasible);
    }
    if (below.chsh_violated) {
      EXPECT_TRUE(r.chsh_violated);
    }
  }
  EXPECT_THROW(classify_region(0.0, 0.5), DomainError);
  EXPECT_THROW(classify_region(0.5, 1.5), DomainError);
}
