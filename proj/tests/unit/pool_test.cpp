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

// Excitation pools, subspace filtering and scoring.

#include <random>

#include <gtest/gtest.h>

#include "shvqe/pool/excitation.hpp"
#include "shvqe/workflow.hpp"

namespace shvqe {
namespace {

Matrix h2_block_matrix() {
  Matrix h(4, 4);
  h << -1.06, 0, 0, 0.18, 0, -1.84, 0.18, 0, 0, 0.18, -0.23, 0, 0.18, 0, 0, -1.06;
  return h;
}

TEST(UccsdPool, Sizes) {
  EXPECT_EQ(generate_uccsd_pool(2, 2).size(), 3u);
  EXPECT_EQ(generate_uccsd_pool(4, 4).size(), 26u);
  EXPECT_EQ(generate_uccsd_pool(6, 6).size(), 105u);
  EXPECT_THROW(generate_uccsd_pool(3, 4), DomainError);
}

TEST(UccsdPool, GeneratorsAreAntiHermitianAndNonzero) {
  for (const auto& op : generate_uccsd_pool(4, 4)) {
    EXPECT_TRUE(op.qubit_terms.is_anti_hermitian()) << op.label();
    EXPECT_FALSE(op.qubit_terms.empty()) << op.label();
    EXPECT_TRUE(op.selected_term.commutes_with(op.selected_term));
  }
}

TEST(Excitation, MixedDoubleSingleTerm) {
  // a+8 a+4 a5 a1 on four spatial orbitals.
  const auto e = make_excitation({7, 3}, {4, 0}, 1.0, Sector{4, 2, 2});
  EXPECT_EQ(e.label(), "a+8 a+4 a5 a1");
  EXPECT_EQ(e.selected_term.label(), "Y6X5X4X3X2X1");
  EXPECT_NEAR(std::abs(e.selected_term.coeff().imag()), 1.0, 1e-15);
  bool found = false;
  for (const auto& t : e.qubit_terms.terms()) found = found || t.same_pattern(e.selected_term);
  EXPECT_TRUE(found);
}

TEST(Excitation, SelectedTermIsFirstPositiveTerm) {
  for (const auto& op : generate_uccsd_pool(6, 6))
    for (const auto& t : op.qubit_terms.terms()) {
      const bool positive = t.coeff().imag() > 0;
      EXPECT_TRUE(!positive || op.selected_term.coeff().imag() > 0) << op.label();
      if (positive == (op.selected_term.coeff().imag() > 0)) {
        EXPECT_FALSE(pauli_pattern_less(t, op.selected_term)) << op.label();
      }
    }
}

TEST(SubspacePool, HydrogenMolecule) {
  const auto p = build_problem(preset_geometry("h2", 0.725));
  const auto s = setup_subspace(p);
  EXPECT_EQ(p.basis.label(s.initial), 0b01u);
  ASSERT_EQ(s.pool.selected.size(), 1u);
  EXPECT_EQ(s.pool.candidate_count, 1u);
  EXPECT_EQ(s.pool.selected[0].selected_term.label(), "X2Y1");
  EXPECT_EQ(s.pool.term_order, std::string(kSingleTermOrder));
}

TEST(Score, Formula) {
  const Matrix h = h2_block_matrix();
  EXPECT_NEAR(operator_score(h(1, 1), h(2, 2), h(1, 2)), 0.18 * 0.18 / 1.61, 1e-12);
  EXPECT_NEAR(operator_score(-1.0, -1.0, 0.1), 0.1, 1e-15);
  EXPECT_NEAR(operator_score(-1.0, -0.9, 0.5), 0.5 * 0.5 / 0.1 > 0.5 ? 0.5 : 2.5, 1e-12);
  EXPECT_EQ(operator_score(-1.0, 0.0, 0.0), 0.0);
}

TEST(Score, CovariantUnderScaling) {
  const auto p = build_problem(preset_geometry("h4-chain", 0.88));
  const auto& sub = p.subspaces[p.subspace_by_energy_rank(0)];
  const auto i0 = choose_initial_state(sub, p.sector_matrix);
  const auto a = build_subspace_pool(p.basis, p.sector_matrix, sub, i0);
  const auto b = build_subspace_pool(p.basis, 3.0 * p.sector_matrix, sub, i0);
  ASSERT_EQ(a.selected.size(), b.selected.size());
  for (std::size_t k = 0; k < a.selected.size(); ++k) {
    EXPECT_EQ(a.selected[k].label(), b.selected[k].label());
    EXPECT_NEAR(b.selected[k].score, 3.0 * a.selected[k].score, 1e-12);
  }
}

TEST(SubspacePool, FilteredOperatorsStayInside) {
  for (const char* mol : {"h4-square", "h4-chain"}) {
    const auto p = build_problem(preset_geometry(mol, 1.0));
    for (std::size_t si = 0; si < p.subspaces.size(); ++si) {
      const auto& sub = p.subspaces[si];
      const auto i0 = choose_initial_state(sub, p.sector_matrix);
      const auto cands = subspace_candidates(p.basis, sub, i0);
      EXPECT_EQ(cands.size(), sub.dimension() - 1);
      for (const auto& c : cands) {
        ASSERT_TRUE(c.target.has_value());
        EXPECT_TRUE(sub.contains(*c.target));
        if (c.rank() > 2) continue;
        // Brute force: apply U to every sector state and check where the weight lands.
        bool inside = true;
        for (std::size_t m = 0; m < p.basis.size(); ++m) {
          if (!sub.contains(m)) continue;
          for (const auto& [img, amp] : c.generator.apply(p.basis.fock(m).bits)) {
            if (std::abs(amp) < 1e-14) continue;
            const auto idx = p.basis.index_of_fock(img);
            inside = inside && idx && sub.contains(*idx);
          }
        }
        EXPECT_EQ(preserves_subspace(c, p.basis, sub), inside) << mol << ' ' << c.label();
      }
      for (const auto& op : build_subspace_pool(p.basis, p.sector_matrix, sub, i0).selected) {
        EXPECT_LE(op.rank(), 2);
        EXPECT_TRUE(preserves_subspace(op, p.basis, sub));
      }
    }
  }
}

TEST(SubspacePool, ScoreOrderIsDescendingAndLexIsSorted) {
  const auto p = build_problem(preset_geometry("h4-square", 1.2));
  const auto& sub = p.subspaces[p.subspace_by_energy_rank(0)];
  const auto i0 = choose_initial_state(sub, p.sector_matrix);
  const auto scored = build_subspace_pool(p.basis, p.sector_matrix, sub, i0, true).selected;
  for (std::size_t k = 1; k < scored.size(); ++k) EXPECT_GE(scored[k - 1].score, scored[k].score);
  const auto lex = build_subspace_pool(p.basis, p.sector_matrix, sub, i0, false).selected;
  ASSERT_EQ(lex.size(), scored.size());
  for (std::size_t k = 1; k < lex.size(); ++k) EXPECT_TRUE(excitation_index_less(lex[k - 1], lex[k]));
}

TEST(SubspacePool, OperatorCountsForFourAtoms) {
  const auto sq = setup_subspace(build_problem(preset_geometry("h4-square", 1.2)));
  EXPECT_EQ(sq.pool.selected.size(), 6u);
  const auto chain = setup_subspace(build_problem(preset_geometry("h4-chain", 0.88)));
  EXPECT_EQ(chain.pool.selected.size(), 14u);
}

TEST(SubspacePool, TargetReachedWithPositiveSign) {
  const auto p = build_problem(preset_geometry("h4-chain", 0.88));
  const auto s = setup_subspace(p);
  for (const auto& op : s.pool.selected) {
    const FermionOp t = FermionOp::term(8, op.phase, [&] {
      std::vector<LadderOp> v;
      for (int c : op.creators) v.push_back(cre(c));
      for (int a : op.annihilators) v.push_back(ann(a));
      return v;
    }());
    const auto out = t.apply(p.basis.fock(s.initial).bits);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out.front().first, p.basis.fock(*op.target).bits);
    EXPECT_NEAR(out.front().second.real(), 1.0, 1e-15);
  }
}

TEST(SubspacePool, EveryCandidateReachesItsTarget) {
  for (const char* mol : {"h2", "h4-square", "h4-chain"}) {
    const auto p = build_problem(preset_geometry(mol, 1.0));
    for (const auto& sub : p.subspaces) {
      const auto i0 = choose_initial_state(sub, p.sector_matrix);
      const auto ops = build_subspace_pool(p.basis, p.sector_matrix, sub, i0).selected;
      for (const auto& op : ops) {
        for (auto mode : {TermMode::kSingle, TermMode::kAll}) {
          const auto c = build_ansatz({op}, p.n_qubits(), p.basis.label(i0), mode);
          const auto psi = prepare_ansatz_state(c, {0.37});
          EXPECT_GT(std::abs(psi[p.basis.label(*op.target)]), 1e-3) << mol << ' ' << op.label();
        }
      }
    }
  }
}

/// Lowest energy over a few BFGS starts, which makes the comparison about the
/// reachable minimum rather than one local optimum.
double reachable_energy(const CompiledObservable& h, const AnsatzCircuit& c, std::mt19937_64& rng) {
  const Objective f = [&](const Params& t) { return h.expectation(prepare_ansatz_state(c, t)); };
  OptimizerConfig cfg;
  cfg.method = OptimizerMethod::kBfgs;
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double best = 1e300;
  for (int start = 0; start < 4; ++start) {
    Params x(c.num_parameters(), 0.0);
    if (start > 0)
      for (auto& v : x) v = u(rng);
    best = std::min(best, bfgs_minimize(f, x, cfg).value);
  }
  return best;
}

TEST(SubspacePool, SingleTermChoiceDoesNotChangeReachableEnergy) {
  constexpr double kHartreeToMeV = 27211.386;
  for (auto [mol, r] : {std::pair{"h2", 0.725}, std::pair{"h4-square", 1.2}}) {
    const auto p = build_problem(preset_geometry(mol, r));
    const auto s = setup_subspace(p);
    const CompiledObservable h(p.qubit_hamiltonian);
    std::mt19937_64 rng(41);
    const auto base = subspace_ansatz(p, s, TermMode::kSingle);
    const double reference = reachable_energy(h, base, rng);
    for (int trial = 0; trial < 8; ++trial) {
      auto c = base;
      for (std::size_t k = 0; k < c.operators.size(); ++k) {
        const auto& terms = s.pool.selected[k].qubit_terms.terms();
        std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
        PauliString t = terms[pick(rng)];
        t.set_coeff(cplx(0.0, t.coeff().imag() > 0 ? 1.0 : -1.0));
        c.operators[k].generators = {t};
      }
      EXPECT_NEAR(reachable_energy(h, c, rng), reference, 5.0 / kHartreeToMeV) << mol << " trial " << trial;
    }
  }
}

}  // namespace
}  // namespace shvqe
