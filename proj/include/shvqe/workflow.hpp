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

#include <optional>
#include <vector>

#include "shvqe/pipeline.hpp"
#include "shvqe/pool/excitation.hpp"
#include "shvqe/solver/ansatz.hpp"
#include "shvqe/solver/ed.hpp"
#include "shvqe/solver/vqe.hpp"

namespace shvqe {

/// One subspace of a problem with its reference state, ranked pool and
/// spin-resolved exact spectrum.
struct SubspaceSetup {
  std::size_t subspace = 0;
  std::size_t initial = 0;  // sector index of the reference state
  PoolReport pool;
  Matrix block;
  EdResult ed;
};

struct SubspaceSelection {
  /// Subspace by rank of its lowest eigenvalue; ignored when `containing` is set.
  std::size_t energy_rank = 0;
  /// Qubit label of a state the subspace must contain.
  std::optional<std::uint64_t> containing;
  /// Qubit label of the reference; default is the lowest diagonal element.
  std::optional<std::uint64_t> initial;
  bool score_order = true;
};

inline Matrix spin_squared_sector_matrix(const MolecularProblem& p) {
  return matrix_in_sector(parity_encode_operator(spin_squared_operator(p.sector.n_orbitals), p.sector),
                          p.basis);
}

inline SubspaceSetup setup_subspace(const MolecularProblem& p, const SubspaceSelection& sel = {}) {
  SubspaceSetup s;
  if (sel.containing) {
    const auto idx = p.basis.index_of(*sel.containing);
    if (!idx) throw DomainError("setup_subspace: state outside the sector");
    s.subspace = subspace_of(p.subspaces, *idx);
  } else {
    s.subspace = p.subspace_by_energy_rank(sel.energy_rank);
  }
  const Subspace& sub = p.subspaces[s.subspace];
  if (sel.initial) {
    const auto idx = p.basis.index_of(*sel.initial);
    if (!idx || !sub.contains(*idx)) throw DomainError("setup_subspace: reference outside the subspace");
    s.initial = *idx;
  } else {
    s.initial = choose_initial_state(sub, p.sector_matrix);
  }
  s.pool = build_subspace_pool(p.basis, p.sector_matrix, sub, s.initial, sel.score_order);
  s.block = restrict_matrix(p.sector_matrix, sub);
  const Matrix s2 = restrict_matrix(spin_squared_sector_matrix(p), sub);
  s.ed = exact_diagonalize(s.block, &s2);
  return s;
}

inline AnsatzCircuit subspace_ansatz(const MolecularProblem& p, const SubspaceSetup& s, TermMode mode,
                                     std::optional<std::size_t> k = std::nullopt) {
  std::vector<ExcitationOperator> ops = s.pool.selected;
  if (k && *k < ops.size()) ops.resize(*k);
  return build_ansatz(ops, p.n_qubits(), p.basis.label(s.initial), mode);
}

/// Every single and double of the closed-shell reference, all terms, from the
/// Hartree-Fock determinant.
inline AnsatzCircuit full_uccsd_ansatz(const MolecularProblem& p) {
  if (p.sector.n_up != p.sector.n_down) throw DomainError("full_uccsd_ansatz: closed-shell sector required");
  const auto pool = generate_uccsd_pool(p.n_electrons, p.n_orbitals());
  return build_ansatz(pool, p.n_qubits(), p.basis.label(p.hartree_fock_index()), TermMode::kAll);
}

/// Ground state of the subspace lifted to the full register.
inline StateVector subspace_ground_state(const MolecularProblem& p, const SubspaceSetup& s, int level = 0) {
  StateVector psi(p.n_qubits(), std::vector<cplx>(std::size_t{1} << p.n_qubits(), cplx(0.0)));
  const auto& members = p.subspaces[s.subspace].members;
  for (std::size_t i = 0; i < members.size(); ++i)
    psi[p.basis.label(members[i])] = s.ed.eigenvectors(static_cast<Eigen::Index>(i), level);
  return psi;
}

}  // namespace shvqe
