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

// Statevector kernels against dense linear algebra.

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "shvqe/pipeline.hpp"
#include "shvqe/simulator/statevector.hpp"
#include "shvqe/solver/ansatz.hpp"

namespace shvqe {
namespace {

using testing::CMatrix;
using testing::dense;

StateVector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n);
  for (auto& x : a) x = cplx(g(rng), g(rng));
  StateVector psi(n, std::move(a));
  const double nrm = psi.norm();
  for (auto& x : psi.amplitudes()) x /= nrm;
  return psi;
}

Eigen::VectorXcd to_eigen(const StateVector& psi) {
  return Eigen::Map<const Eigen::VectorXcd>(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dim()));
}

PauliString random_string(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::string s;
  for (int q = 0; q < n; ++q) s += "IXYZ"[letter(rng)];
  return PauliString::from_letters(s);
}

TEST(Rotation, ZeroAngleIsIdentity) {
  std::mt19937_64 rng(1);
  const auto psi = random_state(rng, 4);
  auto phi = psi;
  apply_pauli_rotation(phi, PauliString::from_letters("XYZX"), 0.0);
  EXPECT_LT((to_eigen(phi) - to_eigen(psi)).norm(), 1e-15);
}

TEST(Rotation, QuarterTurnOfX) {
  StateVector psi(1, 0);
  apply_pauli_rotation(psi, PauliString::from_letters("X"), std::numbers::pi / 2);
  EXPECT_NEAR(std::abs(psi[0]), 0.0, 1e-15);
  EXPECT_NEAR(psi[1].real(), 0.0, 1e-15);
  EXPECT_NEAR(psi[1].imag(), 1.0, 1e-15);
}

TEST(Rotation, HydrogenDoubleExcitation) {
  for (double theta : {0.0, 0.3, -1.1, 2.0}) {
    StateVector psi(2, 0b01);
    apply_pauli_rotation(psi, PauliString::from_letters("XY"), theta);
    EXPECT_NEAR(std::abs(psi[0b01] - std::cos(theta)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi[0b10] - std::sin(theta)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi[0b00]) + std::abs(psi[0b11]), 0.0, 1e-15);
  }
}

TEST(Rotation, MatchesDenseExponential) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 5;
    const auto p = random_string(rng, n);
    const double phi = angle(rng);
    const auto psi = random_state(rng, n);
    auto out = psi;
    apply_pauli_rotation(out, p, phi);
    const CMatrix u = std::cos(phi) * CMatrix::Identity(1 << n, 1 << n) + cplx(0, std::sin(phi)) * dense(p);
    EXPECT_LT((to_eigen(out) - u * to_eigen(psi)).norm(), 1e-12) << p.label();
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
    apply_pauli_rotation(out, p, -phi);
    EXPECT_LT((to_eigen(out) - to_eigen(psi)).norm(), 1e-12);
  }
}

TEST(Rotation, ExponentialRequiresAntiHermitianGenerator) {
  StateVector psi(2, 0);
  auto g = PauliString::from_letters("XY");
  g.set_coeff(cplx(0.0, -2.0));
  apply_pauli_exponential(psi, g, 0.25);  // rotation by -0.5
  EXPECT_NEAR(psi[0].real(), std::cos(0.5), 1e-15);
  g.set_coeff(cplx(1.0, 0.0));
  EXPECT_THROW(apply_pauli_exponential(psi, g, 0.25), DomainError);
}

TEST(Observable, MatchesDenseExpectationAndAction) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    PauliSum h(n);
    for (int k = 0; k < 12; ++k) {
      auto p = random_string(rng, n);
      p.set_coeff(g(rng));
      h.add(p);
    }
    const CompiledObservable obs(h);
    const auto psi = random_state(rng, n);
    const auto v = to_eigen(psi);
    const CMatrix m = dense(h);
    EXPECT_NEAR(obs.expectation(psi), (v.adjoint() * m * v)(0).real(), 1e-12);
    EXPECT_LT((to_eigen(obs.apply(psi)) - m * v).norm(), 1e-12);
  }
}

TEST(Observable, GlobalPhaseInvariance) {
  const auto p = build_problem(preset_geometry("h4-square", 1.2));
  const CompiledObservable obs(p.qubit_hamiltonian);
  std::mt19937_64 rng(4);
  auto psi = random_state(rng, p.n_qubits());
  const double e = obs.expectation(psi);
  for (auto& a : psi.amplitudes()) a *= std::polar(1.0, 0.7);
  EXPECT_NEAR(obs.expectation(psi), e, 1e-12);
}

TEST(Observable, HydrogenElectronicValues) {
  ProblemOptions opt;
  opt.include_nuclear_repulsion = false;
  const auto p = build_problem(preset_geometry("h2", 0.725), opt);
  const CompiledObservable obs(p.qubit_hamiltonian);
  EXPECT_NEAR(obs.expectation(StateVector(2, 0b01)), -1.84, 0.01);
  PauliSum id(2);
  id.add(PauliString::identity(2));
  EXPECT_NEAR(CompiledObservable(id).expectation(StateVector(2, 0b10)), 1.0, 1e-15);

  // The one-parameter single-term ansatz reaches the exact block minimum.
  const AnsatzCircuit c{2, 0b01, {AnsatzOperator{{PauliString::from_letters("XY") * cplx(0, 1)}, "d"}}};
  const double block_min = p.sector_matrix.block(1, 1, 2, 2).selfadjointView<Eigen::Lower>().eigenvalues()(0);
  double best = 1e9;
  for (int k = -2000; k <= 2000; ++k) best = std::min(best, obs.expectation(prepare_ansatz_state(c, {k * 1e-3})));
  EXPECT_NEAR(best, block_min, 1e-6);
}

/// Pauli decomposition of a real 4x4 matrix on two qubits.
PauliSum two_qubit_operator(const Matrix& m) {
  PauliSum out(2);
  for (const char* a : {"I", "X", "Y", "Z"})
    for (const char* b : {"I", "X", "Y", "Z"}) {
      const auto p = PauliString::from_letters(std::string(a) + b);
      const cplx c = (dense(p).adjoint() * m.cast<cplx>()).trace() / 4.0;
      if (std::abs(c) > 1e-14) out.add(p * c);
    }
  return out;
}

TEST(Observable, RoundedHydrogenMatrixMinimum) {
  Matrix m(4, 4);
  m << -1.06, 0, 0, 0.18, 0, -1.84, 0.18, 0, 0, 0.18, -0.23, 0, 0.18, 0, 0, -1.06;
  const CompiledObservable obs(two_qubit_operator(m));
  EXPECT_NEAR(obs.expectation(StateVector(2, 0b01)), -1.84, 1e-12);
  const AnsatzCircuit c{2, 0b01, {AnsatzOperator{{PauliString::from_letters("XY") * cplx(0, 1)}, "d"}}};
  double best = 1e9;
  for (int k = -2000; k <= 2000; ++k) best = std::min(best, obs.expectation(prepare_ansatz_state(c, {k * 1e-3})));
  EXPECT_NEAR(best, -1.8599, 1e-3);
}

TEST(Observable, AgreesWithSectorMatrix) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (auto [mol, r] : {std::pair{"h2", 0.725}, std::pair{"h4-square", 1.2}, std::pair{"h4-chain", 0.88}}) {
    const auto p = build_problem(preset_geometry(mol, r));
    const CompiledObservable obs(p.qubit_hamiltonian);
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXcd v(static_cast<Eigen::Index>(p.basis.size()));
      for (auto& x : v) x = cplx(g(rng), g(rng));
      v.normalize();
      StateVector psi(p.n_qubits());
      psi[0] = 0.0;
      for (std::size_t i = 0; i < p.basis.size(); ++i) psi[p.basis.label(i)] = v(static_cast<Eigen::Index>(i));
      const double e_matrix = (v.adjoint() * p.sector_matrix.cast<cplx>() * v)(0).real();
      EXPECT_NEAR(obs.expectation(psi), e_matrix, 1e-10) << mol;
    }
  }
}

TEST(Ansatz, PrefixAndParameterChecks) {
  const AnsatzCircuit c{3, 0b001, {AnsatzOperator{{PauliString::from_letters("IXY") * cplx(0, 1)}, "a"},
                                   AnsatzOperator{{PauliString::from_letters("XYI") * cplx(0, 1)}, "b"}}};
  EXPECT_EQ(c.prefix(1).num_parameters(), 1u);
  EXPECT_THROW(prepare_ansatz_state(c, {0.1}), DomainError);
  const auto zero = prepare_ansatz_state(c, {0.0, 0.0});
  EXPECT_NEAR(std::abs(zero[0b001]), 1.0, 1e-15);
  const auto full = prepare_ansatz_state(c, {0.4, 0.0});
  EXPECT_LT((to_eigen(full) - to_eigen(prepare_ansatz_state(c.prefix(1), {0.4}))).norm(), 1e-15);
}

TEST(Overlap, IdenticalAndOrthogonal) {
  std::mt19937_64 rng(6);
  const auto a = random_state(rng, 3);
  EXPECT_NEAR(overlap(a, a), 1.0, 1e-12);
  EXPECT_NEAR(overlap(StateVector(3, 1), StateVector(3, 2)), 0.0, 1e-15);
}

}  // namespace
}  // namespace shvqe
