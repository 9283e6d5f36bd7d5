// Copyright 2026 The ctqd Authors
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
#include <vector>

namespace ctqd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix with non-finite entries or an unsupported dimension.
class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

class DimError : public Error {
 public:
  using Error::Error;
};

/// A state vector that should be normalized is not.
class NormError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (time outside a pulse window,
/// population outside [0, 1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The dark state is not decoupled in a single-pair propagator. This is what
/// an unsynchronized Stokes/pump pair looks like.
class NotBlockDiagonal : public Error {
 public:
  using Error::Error;
};

/// Coupling phases that cannot be absorbed into a change of basis.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Step-doubling check of the time-ordered integrator failed.
class StepCountError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent hierarchy, sequence or configuration document.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Analytic route not available for the requested target.
class UseNumeric : public Error {
 public:
  using Error::Error;
};

/// No restart of a numeric phase solver converged. Carries the best phases
/// that were found together with their objective value.
class NoSolution : public Error {
 public:
  NoSolution(const std::string& what, std::vector<double> best, double objective)
      : Error(what), best_(std::move(best)), objective_(objective) {}

  const std::vector<double>& best() const { return best_; }
  double objective() const { return objective_; }

 private:
  std::vector<double> best_;
  double objective_;
};

}  // namespace ctqd
