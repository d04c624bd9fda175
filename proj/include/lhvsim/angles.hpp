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

#include "lhvsim/types.hpp"

namespace lhvsim {

/// Non-negative remainder of x modulo period; result is in [0, period).
inline double positive_mod(double x, double period) {
  double m = std::fmod(x, period);
  if (m < 0.0) m += period;
  // -tiny + period can round up to period itself
  if (m >= period) m = 0.0;
  return m;
}

inline double wrap_angle(double phi) { return positive_mod(phi, constants::two_pi); }

/// Folds a detector separation into [0, pi] using evenness and 2pi-periodicity.
inline double fold_separation(double theta) {
  return std::abs(positive_mod(theta + constants::pi, constants::two_pi) - constants::pi);
}

} // namespace lhvsim
