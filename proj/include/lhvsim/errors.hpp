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

#include <stdexcept>
#include <string>

namespace lhvsim {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The requested (eta, v) point lies outside the validity region of a pattern.
class InfeasibleParameters : public Error {
public:
  using Error::Error;
};

/// (eta, v) = (1, 1): the error fraction c takes the form 0/0.
class DegeneratePoint : public InfeasibleParameters {
public:
  using InfeasibleParameters::InfeasibleParameters;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class InvalidConfig : public Error {
public:
  using Error::Error;
};

/// Raised when a tally has no coincidences, so the conditional correlation is undefined.
class EmptyTally : public Error {
public:
  using Error::Error;
};

} // namespace lhvsim
