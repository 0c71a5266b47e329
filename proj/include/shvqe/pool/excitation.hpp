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
#include <string>
#include <vector>

#include "shvqe/hamiltonian/parity.hpp"
#include "shvqe/partition/cluster.hpp"
#include "shvqe/partition/sector.hpp"

namespace shvqe {

/// Unitarized excitation U = T - T+ with T = a+_{c1} a+_{c2} ... a_{a2} a_{a1}.
struct ExcitationOperator {
  std::vector<int> creators;      // 0-based spin-orbitals, descending
  std::vector<int> annihilators;  // 0-based spin-orbitals, descending
  double phase = 1.0;             // T carries this sign
  FermionOp generator;            // U
  PauliSum qubit_terms;           // parity image of U, anti-Hermitian
  PauliString selected_term;      // unit-imaginary rotation generator
  double score = 0.0;
  std::optional<std::size_t> target;  // sector index reached from the reference

  int rank() const { return static_cast<int>(creators.size()); }

  /// "a+8 a+4 a5 a1" with 1-based spin-orbitals.
  std::string label() const {
    std::string s;
    for (int c : creators) s += (s.empty() ? "" : " ") + std::string("a+") + std::to_string(c + 1);
    for (int a : annihilators) s += " a" + std::to_string(a + 1);
    return s;
  }

  /// Index tuple used for lexicographic ordering.
  std::vector<int> index_key() const {
    std::vector<int> k = creators;
    k.insert(k.end(), annihilators.begin(), annihilators.end());
    return k;
  }
};

/// Total order on Pauli letter patterns: letters compared from qubit 0
/// upward with I < X < Y < Z; the first difference decides.
inline bool pauli_pattern_less(const PauliString& a, const PauliString& b) {
  auto rank = [](char c) {
    switch (c) {
      case 'I': return 0;
      case 'X': return 1;
      case 'Y': return 2;
      default: return 3;
    }
  };
  for (int q = 0; q < a.num_qubits(); ++q) {
    const int ra = rank(a.letter(q)), rb = rank(b.letter(q));
    if (ra != rb) return ra < rb;
  }
  return false;
}

/// First term of the qubit image: terms with a positive imaginary
/// coefficient come first, then pauli_pattern_less decides. The result is
/// rescaled to +/- i times the bare string so that exp(theta * P) is a rotation.
inline PauliString single_term_representation(const PauliSum& terms) {
  if (terms.empty()) throw DomainError("single_term_representation: empty operator");
  auto before = [](const PauliString& a, const PauliString& b) {
    const bool pa = a.coeff().imag() > 0, pb = b.coeff().imag() > 0;
    if (pa != pb) return pa;
    return pauli_pattern_less(a, b);
  };
  const PauliString* best = &terms.terms().front();
  for (const auto& t : terms.terms())
    if (before(t, *best)) best = &t;
  PauliString out = *best;
  const double im = best->coeff().imag();
  if (std::abs(im) < 1e-12) throw DomainError("single_term_representation: term is not anti-Hermitian");
  out.set_coeff(cplx(0.0, im > 0 ? 1.0 : -1.0));
  return out;
}

/// Builds U = phase * (T - T+) and its qubit images for a sector.
inline ExcitationOperator make_excitation(std::vector<int> creators, std::vector<int> annihilators,
                                          double phase, const Sector& sector) {
  if (creators.size() != annihilators.size() || creators.empty()) {
    throw DomainError("make_excitation: need equal, non-zero numbers of creators and annihilators");
  }
  std::sort(creators.rbegin(), creators.rend());
  std::sort(annihilators.rbegin(), annihilators.rend());
  ExcitationOperator e;
  e.creators = creators;
  e.annihilators = annihilators;
  e.phase = phase;
  const int n_modes = sector.n_spin_orbitals();
  std::vector<LadderOp> ops;
  for (int c : creators) ops.push_back(cre(c));
  for (int a : annihilators) ops.push_back(ann(a));
  const FermionOp t = FermionOp::term(n_modes, phase, ops);
  e.generator = (t - t.adjoint()).normal_ordered();
  e.qubit_terms = parity_encode_operator(e.generator, sector);
  e.selected_term = single_term_representation(e.qubit_terms);
  return e;
}

/// Full UCCSD pool over a closed-shell reference in which the lowest
/// n_electrons/2 orbitals of each spin are occupied. Singles and opposite-spin
/// doubles are complete. Same-spin doubles pair each occupied pair (i, j) with
/// the mirrored virtual pair (n-1-i, n-1-j), giving n_occ(n_occ-1) of them.
inline std::vector<ExcitationOperator> generate_uccsd_pool(int n_electrons, int n_orbitals) {
  if (n_electrons < 0 || n_electrons % 2 != 0) {
    throw DomainError("generate_uccsd_pool: electron count must be even, got " +
                      std::to_string(n_electrons));
  }
  const int occ = n_electrons / 2;
  if (occ > n_orbitals) throw DomainError("generate_uccsd_pool: too many electrons");
  const Sector sector{n_orbitals, occ, occ};
  const int n = n_orbitals;
  std::vector<ExcitationOperator> pool;
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < occ; ++i)
      for (int a = occ; a < n; ++a) pool.push_back(make_excitation({a + s * n}, {i + s * n}, 1.0, sector));
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < occ; ++i)
      for (int j = i + 1; j < occ; ++j) {
        const int a = n - 1 - i, b = n - 1 - j;
        if (a < occ || b < occ) continue;
        pool.push_back(make_excitation({a + s * n, b + s * n}, {i + s * n, j + s * n}, 1.0, sector));
      }
  for (int i = 0; i < occ; ++i)
    for (int a = occ; a < n; ++a)
      for (int j = 0; j < occ; ++j)
        for (int b = occ; b < n; ++b) pool.push_back(make_excitation({a, b + n}, {i, j + n}, 1.0, sector));
  return pool;
}

/// For every other member psi_i of the subspace, the excitation T_i with
/// T_i |psi_0> = +|psi_i>, unitarized. Members differing from psi_0 in more
/// than two electrons are kept with their full rank; filter_operators drops them.
inline std::vector<ExcitationOperator> subspace_candidates(const SectorBasis& basis,
                                                           const Subspace& sub,
                                                           std::size_t initial) {
  const std::uint64_t f0 = basis.fock(initial).bits;
  std::vector<ExcitationOperator> out;
  for (std::size_t m : sub.members) {
    if (m == initial) continue;
    const std::uint64_t fi = basis.fock(m).bits;
    std::vector<int> creators, annihilators;
    for (int q = 0; q < basis.sector().n_spin_orbitals(); ++q) {
      if (bit(fi, q) && !bit(f0, q)) creators.push_back(q);
      if (bit(f0, q) && !bit(fi, q)) annihilators.push_back(q);
    }
    std::sort(creators.rbegin(), creators.rend());
    std::sort(annihilators.rbegin(), annihilators.rend());
    std::vector<LadderOp> ops;
    for (int c : creators) ops.push_back(cre(c));
    for (int a : annihilators) ops.push_back(ann(a));
    const auto [img, sign] = FermionOp::apply_term(ops, f0);
    if (sign == 0 || img != fi) throw DomainError("subspace_candidates: excitation does not reach target");
    if (creators.size() > 2) {
      ExcitationOperator e;
      e.creators = creators;
      e.annihilators = annihilators;
      e.phase = sign;
      e.target = m;
      out.push_back(std::move(e));
      continue;
    }
    auto e = make_excitation(creators, annihilators, static_cast<double>(sign), basis.sector());
    e.target = m;
    out.push_back(std::move(e));
  }
  return out;
}

/// True when U maps every subspace member into the span of the subspace.
inline bool preserves_subspace(const ExcitationOperator& op, const SectorBasis& basis,
                               const Subspace& sub) {
  for (std::size_t m : sub.members) {
    for (const auto& [img, amp] : op.generator.apply(basis.fock(m).bits)) {
      const auto i = basis.index_of_fock(img);
      if (!i || !sub.contains(*i)) return false;
    }
  }
  return true;
}

/// Keeps operators of rank <= 2 that do not leak out of the subspace.
inline std::vector<ExcitationOperator> filter_operators(std::vector<ExcitationOperator> candidates,
                                                        const SectorBasis& basis,
                                                        const Subspace& sub) {
  std::vector<ExcitationOperator> out;
  for (auto& c : candidates) {
    if (c.rank() > 2) continue;
    if (!preserves_subspace(c, basis, sub)) continue;
    out.push_back(std::move(c));
  }
  return out;
}

/// s_i = min(|e_0i|, e_0i^2 / |e_0 - e_i|), with s_i = |e_0i| when e_0 = e_i.
inline double operator_score(double e0, double ei, double e0i) {
  const double gap = std::abs(e0 - ei);
  if (gap == 0.0) return std::abs(e0i);
  return std::min(std::abs(e0i), e0i * e0i / gap);
}

/// Ordering by index tuples, used for ties and for the lexicographic mode.
inline bool excitation_index_less(const ExcitationOperator& a, const ExcitationOperator& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return a.index_key() < b.index_key();
}

/// Scores against the sector matrix and sorts by descending score.
inline std::vector<ExcitationOperator> score_operators(std::vector<ExcitationOperator> ops,
                                                       const Matrix& h, std::size_t initial) {
  const auto i0 = static_cast<Eigen::Index>(initial);
  for (auto& op : ops) {
    if (!op.target) throw DomainError("score_operators: operator has no target state");
    const auto it = static_cast<Eigen::Index>(*op.target);
    op.score = operator_score(h(i0, i0), h(it, it), h(i0, it));
  }
  std::stable_sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return excitation_index_less(a, b);
  });
  return ops;
}

inline std::vector<ExcitationOperator> lexicographic_order(std::vector<ExcitationOperator> ops) {
  std::stable_sort(ops.begin(), ops.end(), excitation_index_less);
  return ops;
}

/// Name of the rule single_term_representation applies.
inline constexpr const char* kSingleTermOrder = "positive imaginary coefficient first, then letters from qubit 1 upward, I < X < Y < Z";

struct PoolReport {
  std::size_t candidate_count = 0;
  std::string term_order = kSingleTermOrder;
  std::vector<ExcitationOperator> selected;  // in ansatz order
};

/// Candidates, filter and ranking for one subspace in one call.
inline PoolReport build_subspace_pool(const SectorBasis& basis, const Matrix& h,
                                      const Subspace& sub, std::size_t initial,
                                      bool score_order = true) {
  PoolReport r;
  auto cands = subspace_candidates(basis, sub, initial);
  r.candidate_count = cands.size();
  auto kept = filter_operators(std::move(cands), basis, sub);
  r.selected = score_order ? score_operators(std::move(kept), h, initial)
                           : lexicographic_order(score_operators(std::move(kept), h, initial));
  return r;
}

}  // namespace shvqe
