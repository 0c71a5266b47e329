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
#include <random>
#include <vector>

#include "shvqe/hamiltonian/fermion.hpp"
#include "shvqe/hamiltonian/parity.hpp"
#include "shvqe/simulator/noise.hpp"
#include "shvqe/simulator/statevector.hpp"
#include "shvqe/solver/optimize.hpp"

namespace shvqe {

enum class Backend { kStatevector, kSampled };

struct VqeOptions {
  Backend backend = Backend::kStatevector;
  /// Unset: simplex on the statevector backend, SPSA on the sampled one.
  std::optional<OptimizerMethod> method;
  OptimizerConfig optimizer;
  ShotConfig shots;
  NoiseModel noise;
  int trial = 0;
};

struct VqeResult {
  double energy = 0.0;  // Hartree; a fresh sampled estimate on the sampled backend
  double std_error = 0.0;
  Params theta;
  StateVector state;  // noiseless state at theta
  int evaluations = 0;
  int trial = 0;
};

namespace detail {

/// Seed of trial `trial` under a master seed; distinct trials never share streams.
inline std::uint64_t trial_seed(std::uint64_t master, int trial) {
  std::seed_seq seq{master, static_cast<std::uint64_t>(trial), std::uint64_t{0x5eed}};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace detail

/// Minimizes <psi(theta)|h|psi(theta)> over the ansatz, starting from theta0
/// (zeros when empty).
inline VqeResult run_vqe(const PauliSum& h, const AnsatzCircuit& circuit, const VqeOptions& opt,
                         Params theta0 = {}) {
  if (h.num_qubits() != circuit.n_qubits) throw DomainError("run_vqe: qubit count mismatch");
  if (theta0.empty()) theta0.assign(circuit.num_parameters(), 0.0);
  if (theta0.size() != circuit.num_parameters()) throw DomainError("run_vqe: initial parameter count mismatch");
  OptimizerConfig cfg = opt.optimizer;
  const std::uint64_t seed = detail::trial_seed(opt.shots.seed, opt.trial);
  cfg.seed = seed;
  VqeResult r;
  r.trial = opt.trial;

  if (opt.backend == Backend::kStatevector) {
    cfg.method = opt.method.value_or(OptimizerMethod::kSimplex);
    const CompiledObservable obs(h);
    const Objective f = [&](const Params& t) { return obs.expectation(prepare_ansatz_state(circuit, t)); };
    const auto res = minimize(f, std::move(theta0), cfg);
    r.theta = res.x;
    r.state = prepare_ansatz_state(circuit, r.theta);
    r.energy = obs.expectation(r.state);
    r.evaluations = res.evaluations + 1;
    return r;
  }

  cfg.method = opt.method.value_or(OptimizerMethod::kSpsa);
  const ShotConfig shots{opt.shots.shots, seed};
  std::uint64_t stream = 0;
  const Objective f = [&](const Params& t) {
    return sample_expectation(circuit, t, h, shots, opt.noise, stream++).estimate;
  };
  const auto res = minimize(f, std::move(theta0), cfg);
  r.theta = res.x;
  const auto final_estimate = sample_expectation(circuit, r.theta, h, shots, opt.noise, stream++);
  r.energy = final_estimate.estimate;
  r.std_error = final_estimate.std_error;
  r.state = prepare_ansatz_state(circuit, r.theta);
  r.evaluations = static_cast<int>(stream);
  return r;
}

/// Energy after each prefix of the ansatz, k = 1..k_max. With warm starts
/// each solve begins from the previous optimum extended by a zero.
inline std::vector<VqeResult> add_operators_incrementally(const PauliSum& h, const AnsatzCircuit& circuit,
                                                          std::size_t k_max, const VqeOptions& opt,
                                                          bool warm_start = true) {
  k_max = std::min(k_max, circuit.num_parameters());
  std::vector<VqeResult> out;
  Params theta;
  for (std::size_t k = 1; k <= k_max; ++k) {
    Params start(k, 0.0);
    if (warm_start) std::copy(theta.begin(), theta.end(), start.begin());
    out.push_back(run_vqe(h, circuit.prefix(k), opt, start));
    theta = out.back().theta;
  }
  return out;
}

/// S^2 on the reduced register of a sector.
inline CompiledObservable spin_squared_observable(const Sector& sector) {
  return CompiledObservable(parity_encode_operator(spin_squared_operator(sector.n_orbitals), sector));
}

inline double spin_squared_expectation(const StateVector& psi, const Sector& sector) {
  return spin_squared_observable(sector).expectation(psi);
}

}  // namespace shvqe
