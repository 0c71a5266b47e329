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

#include <array>
#include <cmath>
#include <numbers>

#include "shvqe/chem/geometry.hpp"
#include "shvqe/chem/integrals.hpp"

namespace shvqe::chem {

/// Zeroth-order Boys function F0(t) = int_0^1 exp(-t u^2) du.
///
/// Below t = 30 the downward-stable series exp(-t) sum (2t)^k / (2k+1)!! is
/// summed to machine precision; above it the asymptotic form
/// sqrt(pi/t)/2 is exact to better than 1e-14 (erfc(sqrt(30)) ~ 1e-14).
inline double boys_f0(double t) {
  if (t < 0) throw DomainError("boys_f0: negative argument");
  if (t >= 30.0) return 0.5 * std::sqrt(std::numbers::pi / t);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= 2.0 * t / (2.0 * k + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(-t) * sum;
}

namespace sto3g {

/// Published STO-3G hydrogen contraction (zeta = 1.24).
inline constexpr std::array<double, 3> kExponents = {3.42525091, 0.62391373, 0.16885540};
inline constexpr std::array<double, 3> kCoefficients = {0.15432897, 0.53532814, 0.44463454};

struct Primitive {
  double exponent;
  double weight;  // contraction coefficient times primitive normalization
};

using Contraction = std::array<Primitive, 3>;

inline Contraction hydrogen_s() {
  Contraction c{};
  for (std::size_t k = 0; k < 3; ++k) {
    const double a = kExponents[k];
    c[k] = {a, kCoefficients[k] * std::pow(2.0 * a / std::numbers::pi, 0.75)};
  }
  // Renormalize so the contracted overlap is exactly one.
  double s = 0.0;
  for (const auto& p : c)
    for (const auto& q : c) {
      s += p.weight * q.weight * std::pow(std::numbers::pi / (p.exponent + q.exponent), 1.5);
    }
  for (auto& p : c) p.weight /= std::sqrt(s);
  return c;
}

// Primitive s-type Gaussian integrals (unnormalized), positions in bohr.

inline double overlap_ss(double a, double b, double rab2) {
  const double p = a + b;
  return std::pow(std::numbers::pi / p, 1.5) * std::exp(-a * b / p * rab2);
}

inline double kinetic_ss(double a, double b, double rab2) {
  const double mu = a * b / (a + b);
  return mu * (3.0 - 2.0 * mu * rab2) * overlap_ss(a, b, rab2);
}

inline double nuclear_ss(double a, double b, double rab2, double rpc2, double z) {
  const double p = a + b;
  return -2.0 * std::numbers::pi / p * z * std::exp(-a * b / p * rab2) * boys_f0(p * rpc2);
}

inline double repulsion_ssss(double a, double b, double c, double d, double rab2, double rcd2,
                             double rpq2) {
  const double p = a + b;
  const double q = c + d;
  return 2.0 * std::pow(std::numbers::pi, 2.5) / (p * q * std::sqrt(p + q)) *
         std::exp(-a * b / p * rab2 - c * d / q * rcd2) * boys_f0(p * q / (p + q) * rpq2);
}

}  // namespace sto3g

/// Nuclear repulsion sum_{i<j} Z_i Z_j / r_ij in Hartree.
inline double nuclear_repulsion(const Geometry& g) {
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      e += atomic_number(g.atoms[i].symbol) * atomic_number(g.atoms[j].symbol) /
           (g.distance(i, j) / kBohrInAngstrom);
    }
  return e;
}

/// AO-basis STO-3G integrals for an all-hydrogen geometry: overlap, core
/// Hamiltonian (kinetic + nuclear attraction), (pq|rs) and nuclear repulsion.
inline IntegralSet sto3g_integrals(const Geometry& g) {
  validate(g);
  for (const auto& a : g.atoms) {
    if (a.symbol != "H") {
      throw DomainError("sto3g_integrals: native integrals support hydrogen only, got '" +
                        a.symbol + "'; supply an FCIDUMP instead");
    }
  }
  const int n = static_cast<int>(g.size());
  std::vector<Eigen::Vector3d> centers;
  for (const auto& a : g.atoms) centers.push_back(a.position / kBohrInAngstrom);
  const auto basis = sto3g::hydrogen_s();

  IntegralSet out = IntegralSet::zeros(n, "sto-3g");
  out.e_nuclear = nuclear_repulsion(g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double rab2 = (centers[i] - centers[j]).squaredNorm();
      double s = 0.0, t = 0.0, v = 0.0;
      for (const auto& p : basis)
        for (const auto& q : basis) {
          const double w = p.weight * q.weight;
          s += w * sto3g::overlap_ss(p.exponent, q.exponent, rab2);
          t += w * sto3g::kinetic_ss(p.exponent, q.exponent, rab2);
          const Eigen::Vector3d pc =
              (p.exponent * centers[i] + q.exponent * centers[j]) / (p.exponent + q.exponent);
          for (int c = 0; c < n; ++c) {
            v += w * sto3g::nuclear_ss(p.exponent, q.exponent, rab2,
                                       (pc - centers[c]).squaredNorm(), 1.0);
          }
        }
      out.overlap(i, j) = s;
      out.one_body(i, j) = t + v;
    }
  out.overlap = 0.5 * (out.overlap + out.overlap.transpose());
  out.one_body = 0.5 * (out.one_body + out.one_body.transpose());

  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * n + j < k * n + l) continue;
          const double rab2 = (centers[i] - centers[j]).squaredNorm();
          const double rcd2 = (centers[k] - centers[l]).squaredNorm();
          double v = 0.0;
          for (const auto& p : basis)
            for (const auto& q : basis) {
              const Eigen::Vector3d pp =
                  (p.exponent * centers[i] + q.exponent * centers[j]) / (p.exponent + q.exponent);
              for (const auto& r : basis)
                for (const auto& s : basis) {
                  const Eigen::Vector3d qq = (r.exponent * centers[k] + s.exponent * centers[l]) /
                                             (r.exponent + s.exponent);
                  v += p.weight * q.weight * r.weight * s.weight *
                       sto3g::repulsion_ssss(p.exponent, q.exponent, r.exponent, s.exponent, rab2,
                                             rcd2, (pp - qq).squaredNorm());
                }
            }
          out.two_body.set_symmetric(i, j, k, l, v);
        }
  return out;
}

}  // namespace shvqe::chem
