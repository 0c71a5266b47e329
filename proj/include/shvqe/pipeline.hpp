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
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "shvqe/chem/fcidump.hpp"
#include "shvqe/chem/geometry.hpp"
#include "shvqe/chem/rhf.hpp"
#include "shvqe/chem/sto3g.hpp"
#include "shvqe/chem/symmetry.hpp"
#include "shvqe/hamiltonian/parity.hpp"
#include "shvqe/partition/cluster.hpp"
#include "shvqe/partition/sector.hpp"

namespace shvqe {

struct ProblemOptions {
  /// Adds the nuclear repulsion as an identity term of the Hamiltonian.
  bool include_nuclear_repulsion = true;
  /// Rotates degenerate MOs onto eigenvectors of the geometry's commuting
  /// reflections, so that the sector graph splits along the point group.
  bool symmetry_adapt = true;
  chem::RhfOptions rhf;
  PartitionConfig partition;
  /// Overrides the closed-shell (n/2, n/2) occupation.
  std::optional<std::pair<int, int>> occupation;
};

/// Everything downstream code needs about one molecule at one geometry.
struct MolecularProblem {
  std::optional<chem::Geometry> geometry;
  chem::IntegralSet mo_integrals;
  std::optional<chem::RhfResult> rhf;
  int n_electrons = 0;
  Sector sector;
  FermionOp fermion_hamiltonian;
  PauliSum qubit_hamiltonian;
  SectorBasis basis;
  Matrix sector_matrix;
  std::vector<Subspace> subspaces;

  int n_orbitals() const { return sector.n_orbitals; }
  int n_qubits() const { return sector.n_qubits(); }
  double e_nuclear() const { return mo_integrals.e_nuclear; }
  /// Constant added to electronic energies by the Hamiltonian itself.
  double energy_offset = 0.0;

  /// Sector index of the closed-shell determinant (lowest orbitals filled).
  std::size_t hartree_fock_index() const {
    const int n = sector.n_orbitals;
    const std::uint64_t up = (std::uint64_t{1} << sector.n_up) - 1;
    const std::uint64_t down = (std::uint64_t{1} << sector.n_down) - 1;
    const auto i = basis.index_of_fock(up | (down << n));
    if (!i) throw DomainError("hartree_fock_index: reference outside the sector");
    return *i;
  }

  /// Lowest exact eigenvalue within each subspace.
  std::vector<double> subspace_ground_energies() const {
    std::vector<double> out;
    for (const auto& s : subspaces) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(restrict_matrix(sector_matrix, s),
                                               Eigen::EigenvaluesOnly);
      out.push_back(es.eigenvalues()(0));
    }
    return out;
  }

  /// Subspaces ordered by their lowest eigenvalue; rank 0 holds the ground
  /// state, rank 1 the lowest state of a different symmetry.
  std::size_t subspace_by_energy_rank(std::size_t rank) const {
    const auto e = subspace_ground_energies();
    std::vector<std::size_t> order(e.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return e[a] < e[b] - 1e-12; });
    if (rank >= order.size()) throw DomainError("subspace_by_energy_rank: rank out of range");
    return order[rank];
  }
};

namespace detail {

inline void finish_problem(MolecularProblem& p, const ProblemOptions& opt) {
  const int n = p.mo_integrals.n_orbitals;
  if (n < 2) throw DomainError("problem: at least two spatial orbitals are required");
  int n_up = p.n_electrons / 2, n_down = p.n_electrons - p.n_electrons / 2;
  if (opt.occupation) std::tie(n_up, n_down) = *opt.occupation;
  p.sector = {n, n_up, n_down};
  p.fermion_hamiltonian = build_fermionic_hamiltonian(
      p.mo_integrals, {.include_nuclear_repulsion = opt.include_nuclear_repulsion});
  p.energy_offset = opt.include_nuclear_repulsion ? p.mo_integrals.e_nuclear : 0.0;
  p.qubit_hamiltonian = parity_encode_operator(p.fermion_hamiltonian, p.sector);
  p.basis = enumerate_sector(n, n_up, n_down);
  p.sector_matrix = matrix_in_sector(p.qubit_hamiltonian, p.basis);
  p.subspaces = cluster_graph(p.sector_matrix, opt.partition);
}

}  // namespace detail

/// Native path: STO-3G integrals, RHF, MO transform, qubit Hamiltonian,
/// sector matrix and partition.
inline MolecularProblem build_problem(const chem::Geometry& g, const ProblemOptions& opt = {}) {
  MolecularProblem p;
  p.geometry = g;
  p.n_electrons = g.electron_count();
  const auto ao = chem::sto3g_integrals(g);
  chem::RhfOptions rhf_opt = opt.rhf;
  if (opt.symmetry_adapt) {
    for (const auto& perm : chem::commuting_involutions(g)) {
      rhf_opt.symmetry_operations.push_back(chem::permutation_matrix(perm));
    }
  }
  p.rhf = chem::run_rhf(ao, p.n_electrons, rhf_opt);
  p.mo_integrals = chem::transform_to_mo(ao, p.rhf->mo_coefficients);
  p.mo_integrals.basis_label = "sto-3g rhf mo";
  detail::finish_problem(p, opt);
  return p;
}

/// FCIDUMP path: the integrals are taken as given, in an orthonormal basis.
inline MolecularProblem build_problem(const chem::FcidumpData& data,
                                      const ProblemOptions& opt = {}) {
  MolecularProblem p;
  p.n_electrons = data.n_electrons;
  p.mo_integrals = data.integrals;
  ProblemOptions o = opt;
  if (!o.occupation && data.ms2 != 0) {
    o.occupation = {(data.n_electrons + data.ms2) / 2, (data.n_electrons - data.ms2) / 2};
  }
  detail::finish_problem(p, o);
  return p;
}

/// Named geometry families, each parametrized by one H-H distance r in Angstrom.
inline chem::Geometry preset_geometry(const std::string& name, double r) {
  if (!(r > 0)) throw DomainError("preset_geometry: r must be positive");
  if (name == "h2") return chem::make_h2(r);
  if (name == "h4-square") return chem::make_h4_square(r);
  if (name == "h4-chain") return chem::make_h4_chain(r);
  if (name == "h6-hexagon") return chem::make_h6_hexagon(r);
  throw DomainError("unknown molecule preset '" + name + "'");
}

}  // namespace shvqe
