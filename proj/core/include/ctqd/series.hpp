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

// Truncated power series in one real variable.
//
// A Jet holds c_0 .. c_K of f(x) = sum c_k x^k + O(x^{K+1}); arithmetic is
// exact up to the truncation order, so derivatives at x = 0 come out as
// k! c_k without finite-difference noise.

#pragma once

#include <array>
#include <vector>

#include "ctqd/linalg.hpp"

namespace ctqd {

class Jet {
 public:
  /// Zero series of the given truncation order.
  explicit Jet(int order = 0);

  static Jet constant(int order, Complex value);
  /// x itself.
  static Jet variable(int order);
  /// exp(i a x).
  static Jet exp_i(int order, double a);
  /// exp(i (a0 + a x)), cos(a0 + a x), sin(a0 + a x).
  static Jet exp_i(int order, double a0, double a);
  static Jet cos(int order, double a0, double a);
  static Jet sin(int order, double a0, double a);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Complex operator[](int k) const { return c_[k]; }
  Complex& operator[](int k) { return c_[k]; }
  const std::vector<Complex>& coefficients() const { return c_; }

  /// k-th derivative at x = 0.
  Complex derivative(int k) const;
  /// Sum of the series at x (Horner).
  Complex evaluate(double x) const;
  /// Series of the complex conjugate function (x real).
  Jet conj() const;
  /// Series of the real part.
  Jet real() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(Complex s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

 private:
  std::vector<Complex> c_;
};

/// 2x2 matrix of jets, row major.
struct JetMatrix2 {
  std::array<Jet, 4> e;

  explicit JetMatrix2(int order = 0) : e{Jet(order), Jet(order), Jet(order), Jet(order)} {}
  static JetMatrix2 identity(int order);

  Jet& at(int i, int j) { return e[2 * i + j]; }
  const Jet& at(int i, int j) const { return e[2 * i + j]; }
  int order() const { return e[0].order(); }

  friend JetMatrix2 operator*(const JetMatrix2& a, const JetMatrix2& b);
};

}  // namespace ctqd
