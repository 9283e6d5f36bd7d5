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


#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctqd::oracle {
namespace {

const Complex kI{0.0, 1.0};

// Central-difference stencils, error O(h^2).
Complex central(const std::function<Complex(double)>& f, double x, int k, double h) {
  switch (k) {
    case 0:
      return f(x);
    case 1:
      return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
      return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
    case 4:
      return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h)) /
             (h * h * h * h);
    default:
      throw std::invalid_argument("derivative order above 4");
  }
}

}  // namespace

Complex richardson_derivative(const std::function<Complex(double)>& f, double x, int k, double h,
                              int levels) {
  std::vector<Complex> d;
  for (int l = 0; l <= levels; ++l) d.push_back(central(f, x, k, h / std::pow(2.0, l)));
  double factor = 4.0;
  for (int l = 0; l < levels; ++l) {
    for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = (factor * d[i + 1] - d[i]) / (factor - 1.0);
    d.pop_back();
    factor *= 4.0;
  }
  return d.front();
}

Eigen::MatrixXcd rk4_propagator(const std::function<Eigen::MatrixXcd(double)>& h, double t_end,
                                int steps) {
  const Eigen::MatrixXcd h0 = h(0.0);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(h0.rows(), h0.cols());
  const double dt = t_end / steps;
  auto rhs = [&](double t, const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd { return -kI * (h(t) * v); };
  for (int n = 0; n < steps; ++n) {
    const double t = n * dt;
    const Eigen::MatrixXcd k1 = rhs(t, u);
    const Eigen::MatrixXcd k2 = rhs(t + dt / 2, u + dt / 2 * k1);
    const Eigen::MatrixXcd k3 = rhs(t + dt / 2, u + dt / 2 * k2);
    const Eigen::MatrixXcd k4 = rhs(t + dt, u + dt * k3);
    u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

Eigen::MatrixXcd taylor_exp(const Eigen::MatrixXcd& h, double t) {
  Eigen::MatrixXcd a = -kI * t * h;
  int squarings = 0;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  a /= std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Eigen::Matrix2cd pair_block(double alpha, double r, double theta) {
  const double s = std::sqrt(1.0 - r * r);
  Eigen::Matrix2cd m;
  m << s * std::polar(1.0, alpha), r * std::polar(1.0, -theta), -r * std::polar(1.0, theta),
      s * std::polar(1.0, -alpha);
  return m;
}

Eigen::Matrix2cd unit_from_pairs(double alpha, double r, double theta, double delta) {
  const double a = alpha * (1.0 + delta);
  return pair_block(a, r, theta + std::numbers::pi - 2.0 * alpha) * pair_block(a, r, theta);
}

Eigen::Matrix2cd pauli_rotation(double beta, double polar, double azimuth) {
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;
  const Eigen::Matrix2cd n = std::cos(azimuth) * std::sin(polar) * sx +
                             std::sin(azimuth) * std::sin(polar) * sy + std::cos(polar) * sz;
  return std::cos(beta / 2) * Eigen::Matrix2cd::Identity() - kI * std::sin(beta / 2) * n;
}

double fc3_f0(double zeta, double t21, double t32) {
  using std::cos, std::sin;
  return (4.0 + sin(zeta) - sin(2 * t21 + zeta) - 2 * sin(t21) * cos(t21 + 2 * t32 + zeta) -
          4 * cos(t21) * sin(t21 + t32 + zeta)) /
         8.0;
}

double fc3_f1(double zeta, double t21, double t32) {
  return std::numbers::pi / 2 * std::cos(t21 / 2) * std::sin(t32) *
         std::cos(t21 / 2 + t32 + zeta);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ctqd::oracle
