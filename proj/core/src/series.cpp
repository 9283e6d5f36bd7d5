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

#include "ctqd/series.hpp"

#include <algorithm>
#include <cmath>

namespace ctqd {

Jet::Jet(int order) : c_(static_cast<std::size_t>(std::max(order, 0)) + 1, Complex(0.0, 0.0)) {
  if (order < 0) throw DomainError("series order must be non-negative");
}

Jet Jet::constant(int order, Complex value) {
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int order) {
  Jet j(order);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::exp_i(int order, double a) { return exp_i(order, 0.0, a); }

Jet Jet::exp_i(int order, double a0, double a) {
  // e^{i a0} (i a)^k / k!
  Jet j(order);
  Complex term = std::polar(1.0, a0);
  const Complex step(0.0, a);
  for (int k = 0; k <= order; ++k) {
    j.c_[k] = term;
    term *= step / static_cast<double>(k + 1);
  }
  return j;
}

Jet Jet::cos(int order, double a0, double a) {
  Jet p = exp_i(order, a0, a);
  Jet m = exp_i(order, -a0, -a);
  return (p + m) * Complex(0.5, 0.0);
}

Jet Jet::sin(int order, double a0, double a) {
  Jet p = exp_i(order, a0, a);
  Jet m = exp_i(order, -a0, -a);
  return (p - m) * Complex(0.0, -0.5);
}

Complex Jet::derivative(int k) const {
  if (k < 0 || k > order()) throw DomainError("derivative order beyond series truncation");
  double fact = 1.0;
  for (int n = 2; n <= k; ++n) fact *= n;
  return fact * c_[k];
}

Complex Jet::evaluate(double x) const {
  Complex acc(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Jet Jet::conj() const {
  Jet j(order());
  for (std::size_t k = 0; k < c_.size(); ++k) j.c_[k] = std::conj(c_[k]);
  return j;
}

Jet Jet::real() const {
  Jet j(order());
  for (std::size_t k = 0; k < c_.size(); ++k) j.c_[k] = c_[k].real();
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order() != order()) throw DimError("series orders differ");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order() != order()) throw DimError("series orders differ");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(Complex s) {
  for (Complex& z : c_) z *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) throw DimError("series orders differ");
  const int n = a.order();
  Jet out(n);
  for (int i = 0; i <= n; ++i) {
    if (a.c_[i] == Complex(0.0, 0.0)) continue;
    for (int j = 0; i + j <= n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

JetMatrix2 JetMatrix2::identity(int order) {
  JetMatrix2 m(order);
  m.at(0, 0) = Jet::constant(order, 1.0);
  m.at(1, 1) = Jet::constant(order, 1.0);
  return m;
}

JetMatrix2 operator*(const JetMatrix2& a, const JetMatrix2& b) {
  JetMatrix2 out(a.order());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
    }
  }
  return out;
}

}  // namespace ctqd
