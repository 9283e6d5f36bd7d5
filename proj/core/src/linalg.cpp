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

#include "ctqd/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace ctqd {

namespace {

bool all_finite(const ComplexMatrix::Storage& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void check_dim(int dim) {
  if (dim != 2 && dim != 3) {
    throw InvalidMatrix("dimension must be 2 or 3, got " + std::to_string(dim));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Storage m, bool unitary) : m_(std::move(m)), unitary_(unitary) {
  if (m_.rows() != m_.cols()) throw InvalidMatrix("matrix must be square");
  check_dim(static_cast<int>(m_.rows()));
  if (!all_finite(m_)) throw InvalidMatrix("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::zero(int dim) {
  check_dim(dim);
  return ComplexMatrix(Storage::Zero(dim, dim));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  check_dim(dim);
  return ComplexMatrix(Storage::Identity(dim, dim), true);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  const int dim = static_cast<int>(entries.size());
  check_dim(dim);
  Storage m = Storage::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = entries[k];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const int dim = static_cast<int>(rows.size());
  check_dim(dim);
  Storage m(dim, dim);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim) throw InvalidMatrix("ragged row list");
    int c = 0;
    for (const Complex z : row) m(r, c++) = z;
    ++r;
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  return ComplexMatrix(m_.adjoint(), unitary_);
}

ComplexMatrix ComplexMatrix::as_unitary(double tol) const {
  const double err = unitarity_error();
  if (err > tol) {
    throw InvalidMatrix("matrix is not unitary (max|U^dag U - I| = " +
                        std::to_string(err) + ")");
  }
  return ComplexMatrix(m_, true);
}

double ComplexMatrix::unitarity_error() const {
  const Storage d = m_.adjoint() * m_ - Storage::Identity(dim(), dim());
  return d.cwiseAbs().maxCoeff();
}

double ComplexMatrix::hermiticity_error() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (other.dim() != dim()) throw DimError("dimension mismatch in max_abs_diff");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
  return other.dim() == dim() && max_abs_diff(other) <= tol;
}

StateVector::StateVector(Storage amplitudes) : a_(std::move(amplitudes)) {
  if (a_.size() != 2 && a_.size() != 3) {
    throw DimError("state dimension must be 2 or 3");
  }
  for (Eigen::Index k = 0; k < a_.size(); ++k) {
    if (!std::isfinite(a_(k).real()) || !std::isfinite(a_(k).imag())) {
      throw DomainError("state has non-finite amplitudes");
    }
  }
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector([&] {
        Storage a(static_cast<Eigen::Index>(amplitudes.size()));
        Eigen::Index k = 0;
        for (const Complex z : amplitudes) a(k++) = z;
        return a;
      }()) {}

StateVector StateVector::basis(int dim, int k) {
  if (dim != 2 && dim != 3) throw DimError("state dimension must be 2 or 3");
  if (k < 0 || k >= dim) throw DomainError("basis index out of range");
  Storage a = Storage::Zero(dim);
  a(k) = 1.0;
  return StateVector(std::move(a));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NormError("cannot normalize the zero vector");
  return StateVector(Storage(a_ / n));
}

BlochAxis::BlochAxis(double nx, double ny, double nz) : nx_(nx), ny_(ny), nz_(nz) {
  const double n2 = nx * nx + ny * ny + nz * nz;
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-12) {
    throw DomainError("Bloch axis is not normalized");
  }
}

BlochAxis BlochAxis::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("zero Bloch axis");
  return BlochAxis(x / n, y / n, z / n);
}

ComplexMatrix pauli_x() { return ComplexMatrix::from_rows({{0, 1}, {1, 0}}).as_unitary(); }
ComplexMatrix pauli_y() {
  return ComplexMatrix::from_rows({{0, Complex(0, -1)}, {Complex(0, 1), 0}}).as_unitary();
}
ComplexMatrix pauli_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}).as_unitary(); }

namespace detail {

Eigen::Matrix3cd hermitian_exp3(const Eigen::Matrix3cd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
  const Eigen::Vector3d& w = es.eigenvalues();
  const Eigen::Matrix3cd& v = es.eigenvectors();
  Eigen::Vector3cd phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::polar(1.0, -w(k) * t);
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace detail

ComplexMatrix mat_exp(const ComplexMatrix& generator, double t) {
  if (!std::isfinite(t)) throw InvalidMatrix("non-finite time in mat_exp");
  const auto& a = generator.matrix();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (generator.hermiticity_error() <= 1e-13 * scale) {
    // Symmetrize so the eigensolver sees an exactly Hermitian input.
    const ComplexMatrix::Storage h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::Storage> es(h);
    const auto& w = es.eigenvalues();
    const auto& v = es.eigenvectors();
    ComplexMatrix::Storage phases = ComplexMatrix::Storage::Zero(a.rows(), a.cols());
    for (Eigen::Index k = 0; k < a.rows(); ++k) phases(k, k) = std::polar(1.0, -w(k) * t);
    return ComplexMatrix(v * phases * v.adjoint(), true);
  }
  const Eigen::MatrixXcd g = Complex(0.0, -t) * Eigen::MatrixXcd(a);
  const Eigen::MatrixXcd e = g.exp();
  return ComplexMatrix(ComplexMatrix::Storage(e));
}

ComplexMatrix compose(const ComplexMatrix& later, const ComplexMatrix& earlier) {
  if (later.dim() != earlier.dim()) {
    throw DimError("compose: dimension mismatch (" + std::to_string(later.dim()) + " vs " +
                   std::to_string(earlier.dim()) + ")");
  }
  return ComplexMatrix(later.matrix() * earlier.matrix(),
                       later.unitary() && earlier.unitary());
}

StateVector apply(const ComplexMatrix& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) throw DimError("apply: dimension mismatch");
  return StateVector(StateVector::Storage(op.matrix() * psi.amplitudes()));
}

double fidelity(const StateVector& target, const StateVector& actual) {
  if (target.dim() != actual.dim()) throw DimError("fidelity: dimension mismatch");
  if (std::abs(target.norm() - 1.0) > kNormTol || std::abs(actual.norm() - 1.0) > kNormTol) {
    throw NormError("fidelity requires normalized states");
  }
  const Complex overlap = target.amplitudes().dot(actual.amplitudes());
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

ComplexMatrix bloch_rotation(const BlochAxis& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex i(0.0, 1.0);
  // n.sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
  ComplexMatrix::Storage m(2, 2);
  m(0, 0) = c - i * s * axis.z();
  m(0, 1) = -i * s * Complex(axis.x(), -axis.y());
  m(1, 0) = -i * s * Complex(axis.x(), axis.y());
  m(1, 1) = c + i * s * axis.z();
  return ComplexMatrix(std::move(m), true);
}

}  // namespace ctqd
