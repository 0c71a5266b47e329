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

#include <vector>

#include "shvqe/hamiltonian/fermion.hpp"
#include "shvqe/hamiltonian/pauli.hpp"

namespace shvqe {

/// Fixed electron numbers per spin block.
struct Sector {
  int n_orbitals = 0;
  int n_up = 0;
  int n_down = 0;

  int n_spin_orbitals() const { return 2 * n_orbitals; }
  int n_qubits() const { return 2 * n_orbitals - 2; }
  friend bool operator==(const Sector&, const Sector&) = default;
};

/// Computational-basis label of the reduced 2N-2 qubit register.
struct QubitState {
  std::uint64_t bits = 0;
  int n_qubits = 0;

  std::string to_string() const { return bits_to_string(bits, n_qubits); }
  friend bool operator==(const QubitState&, const QubitState&) = default;
};

/// Prefix parities q_p = f_1 + ... + f_p (mod 2) over all 2N spin-orbitals.
inline std::uint64_t parity_bits(std::uint64_t f, int n_modes) {
  std::uint64_t q = 0;
  int acc = 0;
  for (int i = 0; i < n_modes; ++i) {
    acc ^= bit(f, i);
    q |= static_cast<std::uint64_t>(acc) << i;
  }
  return q;
}

/// Inverse of parity_bits: f_p = q_p xor q_{p-1}.
inline std::uint64_t occupations_from_parity(std::uint64_t q, int n_modes) {
  const std::uint64_t mask = n_modes >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_modes) - 1;
  return (q ^ (q << 1)) & mask;
}

namespace detail {

/// Removes bits n-1 and 2n-1 (0-based) from a 2n-bit word.
inline std::uint64_t drop_symmetry_bits(std::uint64_t w, int n) {
  const std::uint64_t low = w & ((std::uint64_t{1} << (n - 1)) - 1);
  const std::uint64_t high = (w >> n) & ((std::uint64_t{1} << (n - 1)) - 1);
  return low | (high << (n - 1));
}

/// Reinserts bits n-1 and 2n-1 with the given values.
inline std::uint64_t insert_symmetry_bits(std::uint64_t w, int n, int b_low, int b_high) {
  const std::uint64_t low = w & ((std::uint64_t{1} << (n - 1)) - 1);
  const std::uint64_t high = (w >> (n - 1)) & ((std::uint64_t{1} << (n - 1)) - 1);
  return low | (static_cast<std::uint64_t>(b_low) << (n - 1)) | (high << n) |
         (static_cast<std::uint64_t>(b_high) << (2 * n - 1));
}

}  // namespace detail

/// Parity-encodes a Fock state and drops the two symmetry qubits (positions
/// N and 2N, 1-based), whose values are fixed by the sector.
inline QubitState parity_encode_state(const FockState& f) {
  const int n = f.n_spin_orbitals / 2;
  if (n < 1) throw DomainError("parity_encode_state: empty register");
  return {detail::drop_symmetry_bits(parity_bits(f.bits, f.n_spin_orbitals), n), 2 * n - 2};
}

/// Inverse map for states known to lie in `sector`.
inline FockState parity_decode_state(const QubitState& q, const Sector& sector) {
  const int n = sector.n_orbitals;
  const int b_low = sector.n_up & 1;
  const int b_high = (sector.n_up + sector.n_down) & 1;
  const std::uint64_t full = detail::insert_symmetry_bits(q.bits, n, b_low, b_high);
  return {occupations_from_parity(full, 2 * n), 2 * n};
}

/// Image of one ladder operator on the full 2N-qubit register:
///   a+_j = 1/2 (Z_{j-1} X_j - i Y_j) X_{j+1} ... X_{2N-1}
///   a_j  = 1/2 (Z_{j-1} X_j + i Y_j) X_{j+1} ... X_{2N-1}
/// with Z_{-1} = I.
inline PauliSum parity_ladder(const LadderOp& op, int n_modes) {
  const int j = op.mode;
  std::uint64_t tail = 0;
  for (int k = j + 1; k < n_modes; ++k) tail |= std::uint64_t{1} << k;
  const std::uint64_t xj = std::uint64_t{1} << j;
  const std::uint64_t zprev = j > 0 ? std::uint64_t{1} << (j - 1) : 0;
  PauliSum s(n_modes);
  s.add(PauliString(n_modes, xj | tail, zprev, 0.5));
  s.add(PauliString(n_modes, xj | tail, xj, cplx(0.0, op.creation ? -0.5 : 0.5)));
  return s;
}

/// Parity image of a fermionic operator on all 2N qubits, simplified.
inline PauliSum parity_encode_full(const FermionOp& op) {
  const int n_modes = op.num_modes();
  PauliSum out(n_modes);
  std::vector<PauliSum> ladders[2];
  for (int c = 0; c < 2; ++c)
    for (int j = 0; j < n_modes; ++j) ladders[c].push_back(parity_ladder({j, c == 1}, n_modes));
  for (const auto& t : op.terms()) {
    PauliSum prod = PauliSum::identity(n_modes, t.coeff);
    for (const auto& l : t.ops) {
      prod = prod * ladders[l.creation ? 1 : 0][static_cast<std::size_t>(l.mode)];
      prod.simplify();
    }
    for (const auto& term : prod.terms()) out.add(term);
  }
  out.simplify();
  return out;
}

/// Replaces Z on the removed qubits N-1 and 2N-1 (0-based) by the sector
/// eigenvalues (-1)^{n_up} and (-1)^{n_up + n_down}; throws if any term
/// carries X or Y there.
inline PauliSum reduce_two_qubits(const PauliSum& full, const Sector& sector) {
  const int n = sector.n_orbitals;
  if (full.num_qubits() != 2 * n) throw DomainError("reduce_two_qubits: register size mismatch");
  const std::uint64_t lo = std::uint64_t{1} << (n - 1);
  const std::uint64_t hi = std::uint64_t{1} << (2 * n - 1);
  const double s_lo = (sector.n_up & 1) ? -1.0 : 1.0;
  const double s_hi = ((sector.n_up + sector.n_down) & 1) ? -1.0 : 1.0;
  PauliSum out(2 * n - 2);
  for (const auto& t : full.terms()) {
    if ((t.x_mask() & (lo | hi)) != 0) {
      throw DomainError("reduce_two_qubits: term " + t.label() +
                        " does not conserve the symmetry qubits");
    }
    cplx c = t.coeff();
    if (t.z_mask() & lo) c *= s_lo;
    if (t.z_mask() & hi) c *= s_hi;
    out.add(PauliString(2 * n - 2, detail::drop_symmetry_bits(t.x_mask(), n),
                        detail::drop_symmetry_bits(t.z_mask(), n), c));
  }
  out.simplify();
  return out;
}

/// Parity encoding followed by the two-qubit reduction for `sector`.
inline PauliSum parity_encode_operator(const FermionOp& op, const Sector& sector) {
  if (op.num_modes() != sector.n_spin_orbitals()) {
    throw DomainError("parity_encode_operator: operator and sector disagree on mode count");
  }
  return reduce_two_qubits(parity_encode_full(op), sector);
}

}  // namespace shvqe
