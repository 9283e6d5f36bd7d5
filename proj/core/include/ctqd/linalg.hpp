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

// Dense 2x2 / 3x3 complex linear algebra for propagators and states.
//
// Every value type here is immutable after construction. Matrices carry a
// `unitary` flag that is set by the operations that are known to produce
// unitaries (exponentials of Hermitian generators, Bloch rotations,
// products of unitaries) or by an explicit, checked `as_unitary()`.

#pragma once

#include <complex>
#include <initializer_list>
#include <span>

#include <Eigen/Core>

#include "ctqd/errors.hpp"

namespace ctqd {

using Complex = std::complex<double>;

/// Default tolerance for complex equality assertions. Hundreds of composed
/// steps in double precision stay comfortably inside it.
inline constexpr double kDefaultTol = 1e-10;

/// Largest admitted deviation of a state norm from 1 before `fidelity`
/// refuses its input.
inline constexpr double kNormTol = 1e-6;

class ComplexMatrix {
 public:
  using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                Eigen::ColMajor, 3, 3>;

  /// Wraps `m`. Throws InvalidMatrix for a dimension other than 2 or 3, a
  /// non-square shape or non-finite entries. `unitary` is trusted as given;
  /// use `as_unitary()` when the flag has to be verified.
  explicit ComplexMatrix(Storage m, bool unitary = false);

  static ComplexMatrix zero(int dim);
  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(std::span<const Complex> entries);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  int dim() const { return static_cast<int>(m_.rows()); }
  Complex operator()(int row, int col) const { return m_(row, col); }
  const Storage& matrix() const { return m_; }
  bool unitary() const { return unitary_; }

  ComplexMatrix adjoint() const;

  /// Returns a copy flagged unitary. Throws InvalidMatrix when
  /// max|U^dag U - I| exceeds `tol`.
  ComplexMatrix as_unitary(double tol = kDefaultTol) const;

  /// max|U^dag U - I| over all entries.
  double unitarity_error() const;
  /// max|H - H^dag| over all entries.
  double hermiticity_error() const;
  double max_abs_diff(const ComplexMatrix& other) const;
  bool approx_equal(const ComplexMatrix& other, double tol = kDefaultTol) const;

 private:
  Storage m_;
  bool unitary_ = false;
};

class StateVector {
 public:
  using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

  explicit StateVector(Storage amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  /// Computational basis ket |k> of dimension `dim`.
  static StateVector basis(int dim, int k);

  int dim() const { return static_cast<int>(a_.size()); }
  Complex operator[](int k) const { return a_(k); }
  const Storage& amplitudes() const { return a_; }

  double norm() const { return a_.norm(); }
  double population(int k) const { return std::norm(a_(k)); }
  StateVector normalized() const;

 private:
  Storage a_;
};

/// Unit vector on the Bloch sphere.
class BlochAxis {
 public:
  /// Throws DomainError unless nx^2 + ny^2 + nz^2 = 1 within 1e-12.
  BlochAxis(double nx, double ny, double nz);
  /// Rescales (x, y, z) to unit length. Throws DomainError for the zero vector.
  static BlochAxis normalized(double x, double y, double z);

  double x() const { return nx_; }
  double y() const { return ny_; }
  double z() const { return nz_; }

 private:
  double nx_, ny_, nz_;
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// exp(-i A t). Hermitian generators go through an eigendecomposition and
/// the result is flagged unitary; anything else falls back to Eigen's
/// scaling-and-squaring Pade exponential.
ComplexMatrix mat_exp(const ComplexMatrix& generator, double t);

/// later * earlier. The unitary flag survives when both factors carry it.
ComplexMatrix compose(const ComplexMatrix& later, const ComplexMatrix& earlier);

/// U |psi>.
StateVector apply(const ComplexMatrix& op, const StateVector& psi);

/// |<target|actual>|^2. Both states must be normalized to within kNormTol.
double fidelity(const StateVector& target, const StateVector& actual);

/// cos(angle) I - i sin(angle) (n . sigma), i.e. exp(-i angle n.sigma).
/// Determinant is exactly 1; the Bloch-sphere rotation angle is 2*angle.
ComplexMatrix bloch_rotation(const BlochAxis& axis, double angle);

namespace detail {

/// exp(-i H t) for a Hermitian 3x3 generator, no validation. This is the
/// inner kernel of the time-ordered integrator.
Eigen::Matrix3cd hermitian_exp3(const Eigen::Matrix3cd& h, double t);

}  // namespace detail

}  // namespace ctqd
