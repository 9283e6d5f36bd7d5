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

#include "ctqd/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "ctqd/errors.hpp"

namespace ctqd {

namespace {

using Point = std::vector<double>;

struct Vertex {
  Point x;
  double f;
};

double eval(const Objective& f, const Point& x, int& evals) {
  ++evals;
  const double v = f(x);
  return std::isnan(v) ? HUGE_VAL : v;
}

// One simplex run until collapse or budget exhaustion.
void run_simplex(const Objective& f, std::vector<Vertex>& s, const SimplexOptions& o,
                 int& evals) {
  const std::size_t n = s.size() - 1;
  const double dn = static_cast<double>(n);
  const double rho = 1.0;
  const double chi = 1.0 + 2.0 / dn;
  const double psi = 0.75 - 0.5 / dn;
  const double sigma = 1.0 - 1.0 / dn;

  auto order = [&s] {
    std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  auto blend = [n](const Point& c, const Point& w, double t) {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = c[i] + t * (c[i] - w[i]);
    return p;
  };

  order();
  while (evals < o.max_evals) {
    double diam = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) diam = std::max(diam, std::abs(s[k].x[i] - s[0].x[i]));
    }
    if (s[n].f - s[0].f <= o.ftol && diam <= o.xtol) break;
    if (diam <= 1e-15) break;

    Point c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) c[i] += s[k].x[i] / dn;
    }
    const Point xr = blend(c, s[n].x, rho);
    const double fr = eval(f, xr, evals);
    if (fr < s[0].f) {
      const Point xe = blend(c, s[n].x, rho * chi);
      const double fe = eval(f, xe, evals);
      s[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < s[n - 1].f) {
      s[n] = {xr, fr};
    } else {
      const bool outside = fr < s[n].f;
      const Point xc = outside ? blend(c, s[n].x, psi * rho) : blend(c, s[n].x, -psi);
      const double fc = eval(f, xc, evals);
      if (fc < (outside ? fr : s[n].f)) {
        s[n] = {xc, fc};
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          for (std::size_t i = 0; i < n; ++i) {
            s[k].x[i] = s[0].x[i] + sigma * (s[k].x[i] - s[0].x[i]);
          }
          s[k].f = eval(f, s[k].x, evals);
        }
      }
    }
    order();
  }
}

std::vector<Vertex> build_simplex(const Objective& f, const Point& x0, double step, int& evals) {
  const std::size_t n = x0.size();
  std::vector<Vertex> s;
  s.reserve(n + 1);
  s.push_back({x0, eval(f, x0, evals)});
  for (std::size_t i = 0; i < n; ++i) {
    Point x = x0;
    x[i] += step;
    s.push_back({x, eval(f, x, evals)});
  }
  return s;
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts) {
  SimplexResult out;
  if (x0.empty()) {
    out.value = f(x0);
    out.evals = 1;
    return out;
  }
  int evals = 0;
  double step = opts.initial_step;
  std::vector<Vertex> s = build_simplex(f, x0, step, evals);
  run_simplex(f, s, opts, evals);
  for (int k = 0; k < opts.rebuilds && evals < opts.max_evals; ++k) {
    const double before = s[0].f;
    step = std::max(step * 0.1, 1e-6);
    s = build_simplex(f, s[0].x, step, evals);
    run_simplex(f, s, opts, evals);
    if (!(s[0].f < before)) break;
  }
  out.x = s[0].x;
  out.value = s[0].f;
  out.evals = evals;
  return out;
}

MultiStartResult multi_start(const Objective& f, int dim, const MultiStartOptions& opts) {
  if (dim < 0) throw DomainError("negative search dimension");
  if (opts.restarts < 1) throw DomainError("need at least one restart");
  std::vector<SimplexResult> results(opts.restarts);

  auto work = [&](int k) {
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> u(opts.lo, opts.hi);
    std::vector<double> x0(dim);
    for (double& x : x0) x = u(rng);
    results[k] = nelder_mead(f, std::move(x0), opts.simplex);
  };

  const int workers = std::clamp(opts.workers, 1, opts.restarts);
  if (workers == 1) {
    for (int k = 0; k < opts.restarts; ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int k = w; k < opts.restarts; k += workers) work(k);
      });
    }
    for (auto& t : pool) t.join();
  }

  MultiStartResult out;
  for (int k = 0; k < opts.restarts; ++k) {
    if (results[k].value < opts.accept) ++out.converged;
    if (out.best_restart < 0 || results[k].value < out.best.value) {
      out.best = results[k];
      out.best_restart = k;
    }
  }
  out.runs = std::move(results);
  return out;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* v = std::getenv("CTQD_SEED");
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0') return fallback;
  return static_cast<std::uint64_t>(s);
}

}  // namespace ctqd
