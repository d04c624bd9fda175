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

// Event-by-event simulation. Pairs are processed in fixed-size chunks; chunk k
// draws from its own substream derive_stream_seed(seed, k), so a run is a pure
// function of its RunConfig no matter how many workers share the chunks.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <thread>
#include <vector>

#include "lhvsim/analytic.hpp"
#include "lhvsim/errors.hpp"
#include "lhvsim/model.hpp"
#include "lhvsim/random.hpp"
#include "lhvsim/types.hpp"

namespace lhvsim {

/// Draws phi then r, both uniform, consuming exactly two values from the source.
template <UnitSource Source>
HiddenVariable sample_lambda(Source& source) {
  const double u_phi = source.next_unit();
  const double u_r = source.next_unit();
  return {u_phi * constants::two_pi, u_r};
}

template <typename D>
concept Detector = requires(const D& d, const HiddenVariable& lambda, double angle,
                            DetectorSide side, const ModelParams& params) {
  { d(lambda, angle, side, params) } -> std::same_as<Outcome>;
};

/// The model's own detector patterns.
struct PatternDetector {
  Outcome operator()(const HiddenVariable& lambda, double angle, DetectorSide side,
                     const ModelParams& params) const {
    return measure(lambda, angle, side, params);
  }
};

inline constexpr std::uint64_t default_chunk_size = 65536;

struct RunConfig {
  ModelParams params;
  double angle_1 = 0.0;
  double angle_2 = 0.0;
  std::uint64_t n_pairs = 1;
  std::uint64_t seed = 42;
  std::uint64_t chunk_size = default_chunk_size;
};

inline void validate(const RunConfig& config) {
  if (config.n_pairs < 1) throw InvalidConfig("run: n_pairs must be at least 1");
  if (config.chunk_size < 1) throw InvalidConfig("run: chunk_size must be at least 1");
  if (!std::isfinite(config.angle_1) || !std::isfinite(config.angle_2)) {
    throw InvalidConfig("run: detector angles must be finite");
  }
  if (!params_in_range(config.params)) throw InvalidConfig("run: model parameters out of range");
}

struct Tally {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  std::uint64_t n_single_1 = 0;
  std::uint64_t n_single_2 = 0;
  std::uint64_t n_none = 0;
  std::uint64_t n_total = 0;

  std::uint64_t coincidences() const { return n_pp + n_pm + n_mp + n_mm; }

  std::uint64_t cell_sum() const {
    return coincidences() + n_single_1 + n_single_2 + n_none;
  }

  void record(Outcome first, Outcome second) {
    ++n_total;
    const bool d1 = detected(first);
    const bool d2 = detected(second);
    if (d1 && d2) {
      const bool p1 = first == Outcome::Plus;
      const bool p2 = second == Outcome::Plus;
      if (p1 && p2) ++n_pp;
      else if (p1) ++n_pm;
      else if (p2) ++n_mp;
      else ++n_mm;
    } else if (d1) {
      ++n_single_1;
    } else if (d2) {
      ++n_single_2;
    } else {
      ++n_none;
    }
  }

  Tally& operator+=(const Tally& other) {
    n_pp += other.n_pp;
    n_pm += other.n_pm;
    n_mp += other.n_mp;
    n_mm += other.n_mm;
    n_single_1 += other.n_single_1;
    n_single_2 += other.n_single_2;
    n_none += other.n_none;
    n_total += other.n_total;
    return *this;
  }

  friend Tally operator+(Tally lhs, const Tally& rhs) { return lhs += rhs; }
  friend bool operator==(const Tally&, const Tally&) = default;
};

inline std::uint64_t chunk_count(const RunConfig& config) {
  return (config.n_pairs + config.chunk_size - 1) / config.chunk_size;
}

/// Simulates chunk `index` of a run on its own substream.
template <Detector D = PatternDetector>
Tally run_chunk(const RunConfig& config, std::uint64_t index, const D& detector = {}) {
  const std::uint64_t begin = index * config.chunk_size;
  const std::uint64_t count = std::min(config.chunk_size, config.n_pairs - begin);
  UniformStream stream(derive_stream_seed(config.seed, index));
  Tally tally;
  for (std::uint64_t i = 0; i < count; ++i) {
    const HiddenVariable lambda = sample_lambda(stream);
    tally.record(detector(lambda, config.angle_1, DetectorSide::One, config.params),
                 detector(lambda, config.angle_2, DetectorSide::Two, config.params));
  }
  return tally;
}

inline unsigned default_worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs config.n_pairs pairs. Every pair shares one lambda between the two detectors.
template <Detector D = PatternDetector>
Tally run(const RunConfig& config, const D& detector = {}, unsigned workers = default_worker_count()) {
  validate(config);
  const std::uint64_t chunks = chunk_count(config);
  const auto n_workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, chunks));

  if (n_workers == 1) {
    Tally total;
    for (std::uint64_t k = 0; k < chunks; ++k) total += run_chunk(config, k, detector);
    return total;
  }

  // Counts are integers, so the per-worker partial sums merge to the same
  // result in any order.
  std::atomic<std::uint64_t> next{0};
  std::vector<Tally> partial(n_workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t k = next++; k < chunks; k = next++) {
          partial[w] += run_chunk(config, k, detector);
        }
      });
    }
  }
  Tally total;
  for (const Tally& t : partial) total += t;
  return total;
}

/// sqrt(p (1 - p) / n); zero when n is zero.
inline double binomial_sigma(double p, double n) {
  if (n <= 0.0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
}

struct EstimateErrors {
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;
  double corr = 0.0;
  double eta_1 = 0.0;
  double eta_2 = 0.0;
  double coincidence = 0.0;
};

struct Estimates {
  ProbQuad prob_quad_hat;
  double corr_hat = 0.0;
  double eta_1_hat = 0.0;
  double eta_2_hat = 0.0;
  double coincidence_hat = 0.0;
  EstimateErrors std_errors;
};

/// Point estimates and binomial standard errors from a tally. The correlation
/// is conditional on coincidences; singles and double misses are discarded.
inline Estimates estimate(const Tally& tally) {
  const std::uint64_t coinc = tally.coincidences();
  if (tally.n_total == 0 || coinc == 0) {
    throw EmptyTally("estimate: no coincidences, conditional correlation is undefined");
  }
  const auto n = static_cast<double>(tally.n_total);
  const auto nc = static_cast<double>(coinc);

  Estimates est;
  est.prob_quad_hat = {static_cast<double>(tally.n_pp) / n, static_cast<double>(tally.n_pm) / n,
                       static_cast<double>(tally.n_mp) / n, static_cast<double>(tally.n_mm) / n};
  const double signed_count = static_cast<double>(tally.n_pp) - static_cast<double>(tally.n_pm) -
                              static_cast<double>(tally.n_mp) + static_cast<double>(tally.n_mm);
  est.corr_hat = signed_count / nc;
  est.eta_1_hat = (nc + static_cast<double>(tally.n_single_1)) / n;
  est.eta_2_hat = (nc + static_cast<double>(tally.n_single_2)) / n;
  est.coincidence_hat = nc / n;

  auto& se = est.std_errors;
  se.p_pp = binomial_sigma(est.prob_quad_hat.p_pp, n);
  se.p_pm = binomial_sigma(est.prob_quad_hat.p_pm, n);
  se.p_mp = binomial_sigma(est.prob_quad_hat.p_mp, n);
  se.p_mm = binomial_sigma(est.prob_quad_hat.p_mm, n);
  // corr = 2q - 1 with q the fraction of equal-sign coincidences
  const double q = (1.0 + est.corr_hat) / 2.0;
  se.corr = 2.0 * binomial_sigma(q, nc);
  se.eta_1 = binomial_sigma(est.eta_1_hat, n);
  se.eta_2 = binomial_sigma(est.eta_2_hat, n);
  se.coincidence = binomial_sigma(est.coincidence_hat, n);
  return est;
}

/// Width of every statistical gate, in standard errors.
inline constexpr double gate_sigmas = 5.0;

struct IndependenceReport {
  double deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Compares the coincidence rate with eta^2, gated at five binomial standard
/// errors of the expected rate.
inline IndependenceReport independence_check(const Tally& tally, const ModelParams& params) {
  const double expected = params.eta * params.eta;
  const double n = static_cast<double>(tally.n_total);
  const double observed = n > 0.0 ? static_cast<double>(tally.coincidences()) / n : 0.0;
  IndependenceReport report;
  report.deviation = std::abs(observed - expected);
  report.threshold = gate_sigmas * binomial_sigma(expected, n);
  report.pass = report.deviation <= report.threshold;
  return report;
}

} // namespace lhvsim
