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
#include <string>
#include <vector>

#include "shvqe/common.hpp"

namespace shvqe::chem {

/// Dense two-electron tensor in chemists' notation, (pq|rs).
class TwoElectronTensor {
 public:
  TwoElectronTensor() = default;
  explicit TwoElectronTensor(int n)
      : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }

  /// Writes v to all eight index permutations sharing (pq|rs)'s value.
  void set_symmetric(int p, int q, int r, int s, double v) {
    (*this)(p, q, r, s) = v;
    (*this)(q, p, r, s) = v;
    (*this)(p, q, s, r) = v;
    (*this)(q, p, s, r) = v;
    (*this)(r, s, p, q) = v;
    (*this)(s, r, p, q) = v;
    (*this)(r, s, q, p) = v;
    (*this)(s, r, q, p) = v;
  }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// One- and two-electron integrals plus the nuclear repulsion constant, in
/// Hartree. `overlap` is the basis overlap (identity for orthonormal MOs).
struct IntegralSet {
  int n_orbitals = 0;
  Matrix one_body;
  TwoElectronTensor two_body;
  double e_nuclear = 0.0;
  Matrix overlap;
  std::string basis_label;

  static IntegralSet zeros(int n, std::string label) {
    IntegralSet s;
    s.n_orbitals = n;
    s.one_body = Matrix::Zero(n, n);
    s.two_body = TwoElectronTensor(n);
    s.overlap = Matrix::Identity(n, n);
    s.basis_label = std::move(label);
    return s;
  }
};

inline double one_body_asymmetry(const IntegralSet& s) {
  return (s.one_body - s.one_body.transpose()).cwiseAbs().maxCoeff();
}

/// Largest violation of the eight-fold permutational symmetry.
inline double two_body_asymmetry(const TwoElectronTensor& g) {
  const int n = g.dim();
  double worst = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = g(p, q, r, s);
          for (double w : {g(q, p, s, r), g(r, s, p, q), g(s, r, q, p), g(q, p, r, s),
                           g(p, q, s, r), g(r, s, q, p), g(s, r, p, q)}) {
            worst = std::max(worst, std::abs(v - w));
          }
        }
  return worst;
}

/// Four-index AO->MO transform; `mo` holds MO coefficients in its columns.
inline IntegralSet transform_to_mo(const IntegralSet& ao, const Matrix& mo) {
  const int n = ao.n_orbitals;
  if (mo.rows() != n || ao.one_body.rows() != n || ao.two_body.dim() != n) {
    throw DomainError("transform_to_mo: coefficient matrix has " + std::to_string(mo.rows()) +
                      " rows for " + std::to_string(n) + " basis functions");
  }
  const int m = static_cast<int>(mo.cols());
  IntegralSet out = IntegralSet::zeros(m, ao.basis_label + "/mo");
  out.e_nuclear = ao.e_nuclear;
  out.one_body = mo.transpose() * ao.one_body * mo;
  out.one_body = 0.5 * (out.one_body + out.one_body.transpose());
  out.overlap = mo.transpose() * ao.overlap * mo;

  // Quarter transforms, one index at a time.
  const auto nn = static_cast<std::size_t>(n);
  const auto mm = static_cast<std::size_t>(m);
  std::vector<double> t1(mm * nn * nn * nn, 0.0), t2(mm * mm * nn * nn, 0.0),
      t3(mm * mm * mm * nn, 0.0);
  for (int a = 0; a < m; ++a)
    for (int p = 0; p < n; ++p) {
      const double c = mo(p, a);
      if (c == 0.0) continue;
      for (std::size_t rest = 0; rest < nn * nn * nn; ++rest) {
        t1[a * nn * nn * nn + rest] += c * ao.two_body.data()[p * nn * nn * nn + rest];
      }
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int q = 0; q < n; ++q) {
        const double c = mo(q, b);
        if (c == 0.0) continue;
        for (std::size_t rest = 0; rest < nn * nn; ++rest) {
          t2[(a * mm + b) * nn * nn + rest] += c * t1[(a * nn + q) * nn * nn + rest];
        }
      }
  for (std::size_t ab = 0; ab < mm * mm; ++ab)
    for (int c = 0; c < m; ++c)
      for (int r = 0; r < n; ++r) {
        const double k = mo(r, c);
        if (k == 0.0) continue;
        for (int s = 0; s < n; ++s) {
          t3[(ab * mm + c) * nn + s] += k * t2[(ab * nn + r) * nn + s];
        }
      }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double v = 0.0;
          const std::size_t base = ((a * mm + b) * mm + c) * nn;
          for (int s = 0; s < n; ++s) v += mo(s, d) * t3[base + s];
          out.two_body(a, b, c, d) = v;
        }
  // Symmetrize away round-off so the eight-fold symmetry holds exactly.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d <= c; ++d) {
          if (a * m + b < c * m + d) continue;
          const TwoElectronTensor& g = out.two_body;
          const double v = (g(a, b, c, d) + g(b, a, c, d) + g(a, b, d, c) + g(b, a, d, c) +
                            g(c, d, a, b) + g(d, c, a, b) + g(c, d, b, a) + g(d, c, b, a)) /
                           8.0;
          out.two_body.set_symmetric(a, b, c, d, v);
        }
  return out;
}

}  // namespace shvqe::chem
