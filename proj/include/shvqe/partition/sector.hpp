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
#include <optional>
#include <vector>

#include "shvqe/hamiltonian/parity.hpp"

namespace shvqe {

/// Ordered basis of one (n_up, n_down) sector. States are sorted by
/// ascending qubit label, so for H2 the order is |00>, |01>, |10>, |11>.
class SectorBasis {
 public:
  SectorBasis() = default;
  SectorBasis(Sector sector, std::vector<FockState> states) : sector_(sector) {
    for (const auto& f : states) entries_.push_back({f, parity_encode_state(f)});
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.qubit.bits < b.qubit.bits; });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (entries_[i].qubit.bits == entries_[i - 1].qubit.bits) {
        throw DomainError("SectorBasis: duplicate qubit label");
      }
    }
  }

  const Sector& sector() const { return sector_; }
  int n_qubits() const { return sector_.n_qubits(); }
  std::size_t size() const { return entries_.size(); }
  const FockState& fock(std::size_t i) const { return entries_[i].fock; }
  const QubitState& qubit(std::size_t i) const { return entries_[i].qubit; }
  std::uint64_t label(std::size_t i) const { return entries_[i].qubit.bits; }

  /// Position of a qubit label, if it belongs to the sector.
  std::optional<std::size_t> index_of(std::uint64_t label) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), label,
                               [](const Entry& e, std::uint64_t l) { return e.qubit.bits < l; });
    if (it == entries_.end() || it->qubit.bits != label) return std::nullopt;
    return static_cast<std::size_t>(it - entries_.begin());
  }

  std::optional<std::size_t> index_of_fock(std::uint64_t fock_bits) const {
    return index_of(parity_encode_state({fock_bits, sector_.n_spin_orbitals()}).bits);
  }

 private:
  struct Entry {
    FockState fock;
    QubitState qubit;
  };
  Sector sector_;
  std::vector<Entry> entries_;
};

namespace detail {

inline void combinations(int n, int k, std::vector<std::uint64_t>& out) {
  if (k < 0 || k > n) return;
  std::uint64_t v = k == 0 ? 0 : (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  if (k == 0) {
    out.push_back(0);
    return;
  }
  while (v < limit) {
    out.push_back(v);
    // Next bit permutation with the same popcount.
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
}

}  // namespace detail

/// All determinants with n_up electrons in the up block and n_down in the
/// down block.
inline SectorBasis enumerate_sector(int n_orbitals, int n_up, int n_down) {
  if (n_orbitals < 1 || n_orbitals > 32) throw DomainError("enumerate_sector: bad orbital count");
  if (n_up < 0 || n_down < 0 || n_up > n_orbitals || n_down > n_orbitals) {
    throw DomainError("enumerate_sector: electron counts out of range");
  }
  std::vector<std::uint64_t> ups, downs;
  detail::combinations(n_orbitals, n_up, ups);
  detail::combinations(n_orbitals, n_down, downs);
  std::vector<FockState> states;
  states.reserve(ups.size() * downs.size());
  for (auto d : downs)
    for (auto u : ups) states.push_back({u | (d << n_orbitals), 2 * n_orbitals});
  return SectorBasis({n_orbitals, n_up, n_down}, std::move(states));
}

/// Dense matrix <b_i|op|b_j> over the sector, projecting out any image that
/// leaves it. Requires a Hermitian sum with a real matrix representation.
inline Matrix matrix_in_sector(const PauliSum& op, const SectorBasis& basis) {
  if (op.num_qubits() != basis.n_qubits()) {
    throw DomainError("matrix_in_sector: operator acts on " + std::to_string(op.num_qubits()) +
                      " qubits, basis on " + std::to_string(basis.n_qubits()));
  }
  if (!op.is_hermitian()) throw DomainError("matrix_in_sector: operator is not Hermitian");
  const std::size_t d = basis.size();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (const auto& t : op.terms()) {
      const auto [image, amp] = t.apply_to_basis(basis.label(j));
      const auto i = basis.index_of(image);
      if (!i) continue;
      if (std::abs(amp.imag()) > 1e-10) {
        throw DomainError("matrix_in_sector: complex matrix element from term " + t.label());
      }
      m(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) += amp.real();
    }
  }
  return m;
}

/// Complex variant used for anti-Hermitian generators.
inline Eigen::MatrixXcd complex_matrix_in_sector(const PauliSum& op, const SectorBasis& basis) {
  const std::size_t d = basis.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& t : op.terms()) {
      const auto [image, amp] = t.apply_to_basis(basis.label(j));
      if (const auto i = basis.index_of(image)) {
        m(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) += amp;
      }
    }
  return m;
}

}  // namespace shvqe
