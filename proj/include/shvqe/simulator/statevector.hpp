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
#include <map>
#include <string>
#include <vector>

#include "shvqe/hamiltonian/pauli.hpp"

namespace shvqe {

/// Dense state of an n-qubit register; amplitude b belongs to the basis
/// label b, qubit q being bit q.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits, std::uint64_t label = 0)
      : n_(n_qubits), amp_(std::size_t{1} << n_qubits, cplx(0.0)) {
    if (n_qubits < 0 || n_qubits > 30) throw DomainError("StateVector: unsupported qubit count");
    if (label >= amp_.size()) throw DomainError("StateVector: basis label out of range");
    amp_[label] = 1.0;
  }
  StateVector(int n_qubits, std::vector<cplx> amplitudes) : n_(n_qubits), amp_(std::move(amplitudes)) {
    if (amp_.size() != (std::size_t{1} << n_qubits)) throw DomainError("StateVector: wrong length");
  }

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  cplx inner(const StateVector& o) const {
    if (o.dim() != dim()) throw DomainError("StateVector: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * o.amp_[i];
    return s;
  }

 private:
  int n_ = 0;
  std::vector<cplx> amp_;
};

/// Phase with which the bare letter string maps |b> to |b ^ x>:
/// i^{#Y} (-1)^{|z & b|}.
inline cplx bare_pauli_phase(std::uint64_t x, std::uint64_t z, std::uint64_t b) {
  static constexpr cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int k = (popcount(x & z) + 2 * popcount(z & b)) & 3;
  return kPowI[k];
}

/// psi <- exp(i * phi * P) psi = cos(phi) psi + i sin(phi) P psi for the
/// bare letter string P (its coefficient is ignored).
inline void apply_pauli_rotation(StateVector& psi, const PauliString& p, double phi) {
  if (p.num_qubits() != psi.num_qubits()) throw DomainError("apply_pauli_rotation: qubit count mismatch");
  const double c = std::cos(phi), s = std::sin(phi);
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  auto& a = psi.amplitudes();
  const cplx is(0.0, s);
  if (x == 0) {
    for (std::size_t b = 0; b < a.size(); ++b) a[b] *= c + is * bare_pauli_phase(0, z, b);
    return;
  }
  for (std::size_t b = 0; b < a.size(); ++b) {
    const std::size_t b2 = b ^ x;
    if (b2 < b) continue;
    // P|b> = ph1 |b2>, P|b2> = ph2 |b>.
    const cplx ph1 = bare_pauli_phase(x, z, b), ph2 = bare_pauli_phase(x, z, b2);
    const cplx a1 = a[b], a2 = a[b2];
    a[b] = c * a1 + is * ph2 * a2;
    a[b2] = c * a2 + is * ph1 * a1;
  }
}

/// psi <- exp(theta * G) psi for an anti-Hermitian single-string generator
/// G = i*g*P (g real): a rotation by phi = g * theta.
inline void apply_pauli_exponential(StateVector& psi, const PauliString& generator, double theta) {
  const cplx c = generator.coeff();
  if (std::abs(c.real()) > 1e-12) {
    throw DomainError("apply_pauli_exponential: generator " + generator.label() +
                      " is not anti-Hermitian");
  }
  apply_pauli_rotation(psi, generator, c.imag() * theta);
}

/// Hermitian observable pre-grouped by X pattern: H|b> = sum_x d_x[b] |b ^ x>.
class CompiledObservable {
 public:
  CompiledObservable() = default;
  explicit CompiledObservable(const PauliSum& h) : n_(h.num_qubits()) {
    if (!h.is_hermitian()) throw DomainError("CompiledObservable: operator is not Hermitian");
    const std::size_t dim = std::size_t{1} << n_;
    std::map<std::uint64_t, std::size_t> slot;
    for (const auto& t : h.terms()) {
      auto [it, fresh] = slot.try_emplace(t.x_mask(), groups_.size());
      if (fresh) groups_.push_back({t.x_mask(), std::vector<cplx>(dim, cplx(0.0))});
      auto& d = groups_[it->second].diag;
      for (std::size_t b = 0; b < dim; ++b) d[b] += t.coeff() * bare_pauli_phase(t.x_mask(), t.z_mask(), b);
    }
  }

  int num_qubits() const { return n_; }

  /// <psi|H|psi>; the imaginary part must vanish.
  double expectation(const StateVector& psi) const {
    if (psi.num_qubits() != n_) throw DomainError("expectation: qubit count mismatch");
    const auto& a = psi.amplitudes();
    cplx s = 0.0;
    for (const auto& g : groups_)
      for (std::size_t b = 0; b < a.size(); ++b) s += std::conj(a[b ^ g.x]) * g.diag[b] * a[b];
    if (std::abs(s.imag()) > 1e-10 * std::max(1.0, std::abs(s.real()))) {
      throw DomainError("expectation: complex value " + std::to_string(s.imag()));
    }
    return s.real();
  }

  StateVector apply(const StateVector& psi) const {
    StateVector out(n_, std::vector<cplx>(psi.dim(), cplx(0.0)));
    for (const auto& g : groups_)
      for (std::size_t b = 0; b < psi.dim(); ++b) out[b ^ g.x] += g.diag[b] * psi[b];
    return out;
  }

 private:
  struct Group {
    std::uint64_t x;
    std::vector<cplx> diag;
  };
  int n_ = 0;
  std::vector<Group> groups_;
};

inline double expectation(const StateVector& psi, const PauliSum& h) {
  return CompiledObservable(h).expectation(psi);
}

/// |<a|b>|^2.
inline double overlap(const StateVector& a, const StateVector& b) { return std::norm(a.inner(b)); }

/// One variational operator: commuting anti-Hermitian strings sharing one
/// parameter, applied as prod_k exp(theta * G_k).
struct AnsatzOperator {
  std::vector<PauliString> generators;
  std::string label;
};

struct AnsatzCircuit {
  int n_qubits = 0;
  std::uint64_t initial_label = 0;
  std::vector<AnsatzOperator> operators;  // operator 0 acts first

  std::size_t num_parameters() const { return operators.size(); }

  AnsatzCircuit prefix(std::size_t k) const {
    AnsatzCircuit c{n_qubits, initial_label, {}};
    c.operators.assign(operators.begin(), operators.begin() + static_cast<long>(std::min(k, operators.size())));
    return c;
  }
};

inline StateVector prepare_ansatz_state(const AnsatzCircuit& c, const std::vector<double>& theta) {
  if (theta.size() != c.operators.size()) {
    throw DomainError("prepare_ansatz_state: expected " + std::to_string(c.operators.size()) +
                      " parameters, got " + std::to_string(theta.size()));
  }
  StateVector psi(c.n_qubits, c.initial_label);
  for (std::size_t k = 0; k < c.operators.size(); ++k)
    for (const auto& g : c.operators[k].generators) apply_pauli_exponential(psi, g, theta[k]);
  return psi;
}

}  // namespace shvqe
