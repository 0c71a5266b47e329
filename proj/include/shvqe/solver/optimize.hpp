// Copyright 2026 The shvqe Authors
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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "shvqe/common.hpp"

namespace shvqe {

using Params = std::vector<double>;
using Objective = std::function<double(const Params&)>;

enum class OptimizerMethod { kSpsa, kSimplex, kBfgs };

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::kSimplex;
  int max_iterations = 200;  // SPSA iterations, BFGS iterations
  // SPSA gains: a_k = a / (A + k + 1)^alpha, c_k = c / (k + 1)^gamma.
  double spsa_a = 0.2;
  double spsa_c = 0.1;
  double spsa_A = 20.0;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
  // Nelder-Mead.
  double simplex_tolerance = 1e-8;  // spread of function values
  double simplex_step = 0.1;
  int simplex_max_evaluations = 200000;
  int simplex_restarts = 3;
  // BFGS with central-difference gradients.
  double gradient_step = 1e-5;
  double gradient_tolerance = 1e-7;
  std::uint64_t seed = 1;
};

struct OptimizeResult {
  Params x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Simultaneous-perturbation stochastic approximation. Returns the final
/// iterate; `value` is the mean of the last pair of perturbed evaluations.
inline OptimizeResult spsa_minimize(const Objective& f, Params x, const OptimizerConfig& cfg) {
  OptimizeResult r;
  const std::size_t n = x.size();
  if (n == 0) {
    r.x = x;
    r.value = f(x);
    r.evaluations = 1;
    r.converged = true;
    return r;
  }
  if (cfg.max_iterations < 1 || cfg.spsa_a <= 0 || cfg.spsa_c <= 0) {
    throw DomainError("spsa_minimize: iterations and gains must be positive");
  }
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution coin(0.5);
  Params delta(n), xp(n), xm(n);
  for (int k = 0; k < cfg.max_iterations; ++k) {
    const double ak = cfg.spsa_a / std::pow(cfg.spsa_A + k + 1.0, cfg.spsa_alpha);
    const double ck = cfg.spsa_c / std::pow(k + 1.0, cfg.spsa_gamma);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = coin(rng) ? 1.0 : -1.0;
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    const double fp = f(xp), fm = f(xm);
    r.evaluations += 2;
    const double g = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * g / delta[i];
    r.value = 0.5 * (fp + fm);
  }
  r.x = std::move(x);
  r.converged = true;
  return r;
}

/// Nelder-Mead with dimension-adaptive coefficients, restarted from the best
/// vertex until a restart no longer improves the value.
inline OptimizeResult simplex_minimize(const Objective& f, Params x0, const OptimizerConfig& cfg) {
  OptimizeResult r;
  const std::size_t n = x0.size();
  r.x = x0;
  r.value = f(x0);
  r.evaluations = 1;
  if (n == 0) {
    r.converged = true;
    return r;
  }
  const double nd = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / nd, gamma = 0.75 - 0.5 / nd, delta = 1.0 - 1.0 / nd;

  for (int restart = 0; restart <= cfg.simplex_restarts; ++restart) {
    std::vector<Params> v(n + 1, r.x);
    std::vector<double> fv(n + 1);
    fv[0] = r.value;
    for (std::size_t i = 0; i < n; ++i) {
      v[i + 1][i] += cfg.simplex_step;
      fv[i + 1] = f(v[i + 1]);
    }
    r.evaluations += static_cast<int>(n);
    std::vector<std::size_t> order(n + 1);
    bool done = false;
    while (!done && r.evaluations < cfg.simplex_max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
      const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
      if (fv[worst] - fv[best] <= cfg.simplex_tolerance * (1.0 + std::abs(fv[best]))) {
        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = 0; j < n; ++j) size = std::max(size, std::abs(v[i][j] - v[best][j]));
        if (size < 1e-6 || fv[worst] - fv[best] <= 1e-14) {
          done = true;
          break;
        }
      }
      Params centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t j = 0; j < n; ++j) centroid[j] += v[i][j] / nd;
      }
      auto along = [&](double t) {
        Params p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (v[worst][j] - centroid[j]);
        return p;
      };
      const Params xr = along(-alpha);
      const double fr = f(xr);
      ++r.evaluations;
      if (fr < fv[best]) {
        const Params xe = along(-alpha * beta);
        const double fe = f(xe);
        ++r.evaluations;
        if (fe < fr) {
          v[worst] = xe;
          fv[worst] = fe;
        } else {
          v[worst] = xr;
          fv[worst] = fr;
        }
        continue;
      }
      if (fr < fv[second]) {
        v[worst] = xr;
        fv[worst] = fr;
        continue;
      }
      const bool outside = fr < fv[worst];
      const Params xc = along(outside ? -alpha * gamma : gamma);
      const double fc = f(xc);
      ++r.evaluations;
      if (fc < (outside ? fr : fv[worst])) {
        v[worst] = xc;
        fv[worst] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        for (std::size_t j = 0; j < n; ++j) v[i][j] = v[best][j] + delta * (v[i][j] - v[best][j]);
        fv[i] = f(v[i]);
      }
      r.evaluations += static_cast<int>(n);
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    const double improvement = r.value - *it;
    if (*it <= r.value) {
      r.value = *it;
      r.x = v[static_cast<std::size_t>(it - fv.begin())];
    }
    r.converged = done;
    if (restart > 0 && improvement < cfg.simplex_tolerance) break;
  }
  return r;
}

/// Quasi-Newton minimization with central-difference gradients and an
/// Armijo backtracking line search.
inline OptimizeResult bfgs_minimize(const Objective& f, Params x, const OptimizerConfig& cfg) {
  OptimizeResult r;
  const std::size_t n = x.size();
  const auto nn = static_cast<Eigen::Index>(n);
  double fx = f(x);
  r.evaluations = 1;
  if (n == 0) {
    r.x = x;
    r.value = fx;
    r.converged = true;
    return r;
  }
  auto gradient = [&](const Params& p) {
    Vector g(nn);
    Params q = p;
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = p[i] + cfg.gradient_step;
      const double up = f(q);
      q[i] = p[i] - cfg.gradient_step;
      const double down = f(q);
      q[i] = p[i];
      g(static_cast<Eigen::Index>(i)) = (up - down) / (2.0 * cfg.gradient_step);
    }
    r.evaluations += static_cast<int>(2 * n);
    return g;
  };
  Matrix hinv = Matrix::Identity(nn, nn);
  Vector g = gradient(x);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < cfg.gradient_tolerance) {
      r.converged = true;
      break;
    }
    Vector dir = -hinv * g;
    if (dir.dot(g) >= 0) {
      hinv.setIdentity();
      dir = -g;
    }
    double step = 1.0, f_new = fx;
    Params x_new(n);
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * dir(static_cast<Eigen::Index>(i));
      f_new = f(x_new);
      ++r.evaluations;
      if (f_new <= fx + 1e-4 * step * g.dot(dir)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      r.converged = true;  // no descent left at finite-difference resolution
      break;
    }
    const Vector g_new = gradient(x_new);
    Vector s(nn), y = g_new - g;
    for (std::size_t i = 0; i < n; ++i) s(static_cast<Eigen::Index>(i)) = x_new[i] - x[i];
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Matrix id = Matrix::Identity(nn, nn);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    x = x_new;
    fx = f_new;
    g = g_new;
  }
  r.x = std::move(x);
  r.value = fx;
  return r;
}

inline OptimizeResult minimize(const Objective& f, Params x0, const OptimizerConfig& cfg) {
  switch (cfg.method) {
    case OptimizerMethod::kSpsa: return spsa_minimize(f, std::move(x0), cfg);
    case OptimizerMethod::kBfgs: return bfgs_minimize(f, std::move(x0), cfg);
    case OptimizerMethod::kSimplex: break;
  }
  return simplex_minimize(f, std::move(x0), cfg);
}

}  // namespace shvqe
