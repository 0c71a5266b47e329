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
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "shvqe/chem/integrals.hpp"

namespace shvqe::chem {

struct RhfOptions {
  double density_tolerance = 1e-8;
  int max_iterations = 200;
  /// Weight of the previous density once mixing is active.
  double mixing = 0.5;
  /// Turn mixing on the first time the energy rises between iterations.
  bool mix_on_oscillation = true;
  std::optional<Matrix> warm_start;
  /// AO-space operators commuting with the Fock matrix (point-group
  /// involutions). Degenerate orbitals are rotated to be their eigenvectors.
  std::vector<Matrix> symmetry_operations;
  double degeneracy_tolerance = 1e-6;
};

struct RhfResult {
  Matrix mo_coefficients;  // AO x MO, ascending orbital energy
  Vector orbital_energies;
  Matrix density_matrix;  // P = 2 C_occ C_occ^T
  double e_total = 0.0;
  double e_electronic = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> energy_history;  // electronic energy per iteration
  bool mixing_used = false;
};

namespace detail {

inline Matrix fock_matrix(const IntegralSet& s, const Matrix& p) {
  const int n = s.n_orbitals;
  Matrix f = s.one_body;
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v) {
      double g = 0.0;
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          g += p(l, k) * (s.two_body(m, v, k, l) - 0.5 * s.two_body(m, l, k, v));
        }
      f(m, v) += g;
    }
  return 0.5 * (f + f.transpose());
}

/// Rotates each block of degenerate orbitals onto common eigenvectors of the
/// symmetry operations, then fixes every orbital's sign so that its largest
/// coefficient is positive.
inline void adapt_orbitals(Matrix& c, const Vector& eps, const Matrix& overlap,
                           const std::vector<Matrix>& ops, double tol) {
  const int m = static_cast<int>(c.cols());
  int start = 0;
  while (start < m) {
    int end = start + 1;
    while (end < m && std::abs(eps(end) - eps(start)) < tol * std::max(1.0, std::abs(eps(start))))
      ++end;
    if (end - start > 1 && !ops.empty()) {
      struct Block {
        Matrix cols;
        std::vector<int> labels;
      };
      std::vector<Block> blocks{{c.middleCols(start, end - start), {}}};
      for (const auto& op : ops) {
        std::vector<Block> next;
        for (auto& b : blocks) {
          Matrix mm = b.cols.transpose() * overlap * op * b.cols;
          mm = 0.5 * (mm + mm.transpose());
          Eigen::SelfAdjointEigenSolver<Matrix> es(mm);
          Matrix rotated = b.cols * es.eigenvectors();
          Block plus{Matrix(rotated.rows(), 0), b.labels};
          Block minus{Matrix(rotated.rows(), 0), b.labels};
          plus.labels.push_back(1);
          minus.labels.push_back(-1);
          for (int k = 0; k < rotated.cols(); ++k) {
            Block& target = es.eigenvalues()(k) > 0 ? plus : minus;
            target.cols.conservativeResize(Eigen::NoChange, target.cols.cols() + 1);
            target.cols.col(target.cols.cols() - 1) = rotated.col(k);
          }
          if (plus.cols.cols() > 0) next.push_back(std::move(plus));
          if (minus.cols.cols() > 0) next.push_back(std::move(minus));
        }
        blocks = std::move(next);
      }
      std::stable_sort(blocks.begin(), blocks.end(),
                       [](const Block& a, const Block& b) { return a.labels > b.labels; });
      int col = start;
      for (const auto& b : blocks)
        for (int k = 0; k < b.cols.cols(); ++k) c.col(col++) = b.cols.col(k);
    }
    start = end;
  }
  for (int k = 0; k < m; ++k) {
    const double big = c.col(k).cwiseAbs().maxCoeff();
    for (int i = 0; i < c.rows(); ++i) {
      if (std::abs(c(i, k)) > big - 1e-8) {
        if (c(i, k) < 0) c.col(k) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace detail

/// Restricted closed-shell Hartree-Fock by Roothaan fixed-point iteration.
/// Non-convergence is reported through `converged`; the last iterate is kept.
inline RhfResult run_rhf(const IntegralSet& ints, int n_electrons, const RhfOptions& opt = {}) {
  const int n = ints.n_orbitals;
  if (n_electrons < 0 || n_electrons % 2 != 0) {
    throw DomainError("run_rhf: closed-shell RHF needs an even electron count, got " +
                      std::to_string(n_electrons));
  }
  const int n_occ = n_electrons / 2;
  if (n_occ > n) throw DomainError("run_rhf: more electron pairs than orbitals");

  Eigen::SelfAdjointEigenSolver<Matrix> s_eig(ints.overlap);
  const Matrix x = s_eig.eigenvectors() * s_eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                   s_eig.eigenvectors().transpose();

  RhfResult res;
  auto diagonalize = [&](const Matrix& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.transpose() * f * x);
    res.orbital_energies = es.eigenvalues();
    res.mo_coefficients = x * es.eigenvectors();
    detail::adapt_orbitals(res.mo_coefficients, res.orbital_energies, ints.overlap,
                           opt.symmetry_operations, opt.degeneracy_tolerance);
  };
  auto density = [&]() {
    const Matrix occ = res.mo_coefficients.leftCols(n_occ);
    return Matrix(2.0 * occ * occ.transpose());
  };

  Matrix p;
  if (opt.warm_start) {
    if (opt.warm_start->rows() != n || opt.warm_start->cols() != n) {
      throw DomainError("run_rhf: warm-start density has the wrong dimension");
    }
    p = *opt.warm_start;
  } else {
    diagonalize(ints.one_body);
    p = density();
  }

  bool mixing = false;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Matrix f = detail::fock_matrix(ints, p);
    const double e = 0.5 * (p.cwiseProduct(ints.one_body + f)).sum();
    if (opt.mix_on_oscillation && !res.energy_history.empty() &&
        e > res.energy_history.back() + 1e-12) {
      mixing = true;
    }
    res.energy_history.push_back(e);
    diagonalize(f);
    Matrix p_new = density();
    if (mixing) p_new = (1.0 - opt.mixing) * p_new + opt.mixing * p;
    const double change = (p_new - p).cwiseAbs().maxCoeff();
    p = std::move(p_new);
    res.iterations = it;
    if (change < opt.density_tolerance) {
      res.converged = true;
      break;
    }
  }
  res.mixing_used = mixing;

  const Matrix f = detail::fock_matrix(ints, p);
  diagonalize(f);
  res.density_matrix = density();
  const Matrix f_final = detail::fock_matrix(ints, res.density_matrix);
  res.e_electronic = 0.5 * (res.density_matrix.cwiseProduct(ints.one_body + f_final)).sum();
  res.e_total = res.e_electronic + ints.e_nuclear;
  return res;
}

}  // namespace shvqe::chem
