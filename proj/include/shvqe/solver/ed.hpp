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

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "shvqe/common.hpp"

namespace shvqe {

struct EdResult {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // columns
  std::vector<double> spin_squared;  // filled when an S^2 matrix is supplied

  double ground_energy() const { return eigenvalues(0); }
};

/// Full spectrum of a real symmetric matrix.
inline EdResult exact_diagonalize(const Matrix& h, const Matrix* spin_squared = nullptr) {
  if (h.rows() != h.cols()) throw DomainError("exact_diagonalize: matrix is not square");
  if (h.size() == 0) throw DomainError("exact_diagonalize: empty matrix");
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw DomainError("exact_diagonalize: matrix asymmetric by " + std::to_string(asym));
  }
  EdResult r;
  if (spin_squared == nullptr) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    r.eigenvalues = es.eigenvalues();
    r.eigenvectors = es.eigenvectors();
    return r;
  }
  // Resolve degenerate eigenspaces into S^2 eigenvectors: S^2 commutes with
  // H, so diagonalizing H + lambda S^2 with a tiny lambda splits them without
  // moving any eigenvalue of H by more than lambda * max S^2; eigenvalues are
  // then recomputed as Rayleigh quotients of H.
  const Matrix& s2 = *spin_squared;
  const double lambda = 1e-7;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h + lambda * s2);
  r.eigenvectors = es.eigenvectors();
  r.eigenvalues.resize(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    const auto v = r.eigenvectors.col(k);
    r.eigenvalues(k) = v.dot(h * v);
    r.spin_squared.push_back(v.dot(s2 * v));
  }
  return r;
}

/// S from <S^2> = S(S+1), when the value is within tol of such a number.
inline std::optional<double> infer_spin(double s2, double tol = 1e-6) {
  if (s2 < -tol) return std::nullopt;
  const double s = 0.5 * (std::sqrt(1.0 + 4.0 * std::max(0.0, s2)) - 1.0);
  const double half = std::round(2.0 * s) / 2.0;
  if (std::abs(half * (half + 1.0) - s2) > tol) return std::nullopt;
  return half;
}

}  // namespace shvqe
