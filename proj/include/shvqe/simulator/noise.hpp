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
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "shvqe/simulator/statevector.hpp"

namespace shvqe {

/// Gate set of a compiled Pauli-rotation circuit. kToY is S-dagger followed by
/// H (maps Y to Z), kFromY its inverse; both count as one single-qubit gate.
enum class GateKind : std::uint8_t { kX, kH, kToY, kFromY, kRz, kCnot };

struct Gate {
  GateKind kind = GateKind::kX;
  int q0 = 0;
  int q1 = -1;         // CNOT target
  double angle = 0.0;  // Rz(angle) = exp(-i angle Z / 2)

  bool two_qubit() const { return kind == GateKind::kCnot; }
};

struct CompiledCircuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
};

/// Basis change, CNOT staircase, Rz and the mirrored uncompute, realizing
/// exp(i phi P) for the bare string P.
inline void append_pauli_rotation(std::vector<Gate>& out, const PauliString& p, double phi) {
  std::vector<int> support;
  for (int q = 0; q < p.num_qubits(); ++q)
    if (p.letter(q) != 'I') support.push_back(q);
  if (support.empty()) return;  // global phase
  for (int q : support) {
    if (p.letter(q) == 'X') out.push_back({GateKind::kH, q});
    if (p.letter(q) == 'Y') out.push_back({GateKind::kToY, q});
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i) out.push_back({GateKind::kCnot, support[i], support[i + 1]});
  out.push_back({GateKind::kRz, support.back(), -1, -2.0 * phi});
  for (std::size_t i = support.size() - 1; i > 0; --i) out.push_back({GateKind::kCnot, support[i - 1], support[i]});
  for (int q : support) {
    if (p.letter(q) == 'X') out.push_back({GateKind::kH, q});
    if (p.letter(q) == 'Y') out.push_back({GateKind::kFromY, q});
  }
}

/// X gates preparing the initial basis state, then every rotation in ansatz order.
inline CompiledCircuit compile_circuit(const AnsatzCircuit& c, const std::vector<double>& theta) {
  if (theta.size() != c.operators.size()) {
    throw DomainError("compile_circuit: expected " + std::to_string(c.operators.size()) + " parameters, got " +
                      std::to_string(theta.size()));
  }
  CompiledCircuit out{c.n_qubits, {}};
  for (int q = 0; q < c.n_qubits; ++q)
    if (bit(c.initial_label, q)) out.gates.push_back({GateKind::kX, q});
  for (std::size_t k = 0; k < c.operators.size(); ++k) {
    for (const auto& g : c.operators[k].generators) {
      if (std::abs(g.coeff().real()) > 1e-12) throw DomainError("compile_circuit: generator is not anti-Hermitian");
      append_pauli_rotation(out.gates, g, g.coeff().imag() * theta[k]);
    }
  }
  return out;
}

inline void apply_gate(StateVector& psi, const Gate& g) {
  auto& a = psi.amplitudes();
  const std::size_t dim = a.size();
  const std::size_t m0 = std::size_t{1} << g.q0;
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  // Visits every b with bit q0 clear: low bits run inside, high bits outside.
  auto pairs = [&](auto&& f) {
    for (std::size_t hi = 0; hi < dim; hi += 2 * m0)
      for (std::size_t b = hi; b < hi + m0; ++b) f(b);
  };
  switch (g.kind) {
    case GateKind::kX:
      pairs([&](std::size_t b) { std::swap(a[b], a[b | m0]); });
      return;
    case GateKind::kH:
      pairs([&](std::size_t b) {
        const cplx u = a[b], v = a[b | m0];
        a[b] = (u + v) * kInvSqrt2;
        a[b | m0] = (u - v) * kInvSqrt2;
      });
      return;
    case GateKind::kToY:
      pairs([&](std::size_t b) {
        const cplx u = a[b], v(a[b | m0].imag(), -a[b | m0].real());  // S-dagger
        a[b] = (u + v) * kInvSqrt2;
        a[b | m0] = (u - v) * kInvSqrt2;
      });
      return;
    case GateKind::kFromY:
      pairs([&](std::size_t b) {
        const cplx u = a[b], v = a[b | m0];
        const cplx d = (u - v) * kInvSqrt2;
        a[b] = (u + v) * kInvSqrt2;
        a[b | m0] = cplx(-d.imag(), d.real());  // S
      });
      return;
    case GateKind::kRz: {
      const double c = std::cos(0.5 * g.angle), s = std::sin(0.5 * g.angle);
      pairs([&](std::size_t b) {
        const cplx u = a[b], v = a[b | m0];
        a[b] = cplx(c * u.real() + s * u.imag(), c * u.imag() - s * u.real());
        a[b | m0] = cplx(c * v.real() - s * v.imag(), c * v.imag() + s * v.real());
      });
      return;
    }
    case GateKind::kCnot: {
      const std::size_t m1 = std::size_t{1} << g.q1;
      pairs([&](std::size_t b) {
        const std::size_t on = b | m0;  // control set
        if (!(on & m1)) std::swap(a[on], a[on | m1]);
      });
      return;
    }
  }
}

inline void apply_circuit(StateVector& psi, const CompiledCircuit& c) {
  for (const auto& g : c.gates) apply_gate(psi, g);
}

/// Single-qubit Pauli letter 1 = X, 2 = Y, 3 = Z on qubit q.
inline void apply_pauli_letter(StateVector& psi, int q, int letter) {
  if (letter == 0) return;
  const std::uint64_t m = std::uint64_t{1} << q;
  const std::uint64_t x = (letter == 1 || letter == 2) ? m : 0;
  const std::uint64_t z = (letter == 2 || letter == 3) ? m : 0;
  apply_pauli_rotation(psi, PauliString(psi.num_qubits(), x, z), std::numbers::pi / 2);  // i * P, a global phase
}

struct NoiseModel {
  double p1 = 0.001;  // per single-qubit gate
  double p2 = 0.01;   // per CNOT

  static NoiseModel none() { return {0.0, 0.0}; }
  bool enabled() const { return p1 > 0.0 || p2 > 0.0; }
  void validate() const {
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0)) {
      throw DomainError("NoiseModel: probabilities must lie in [0, 1]");
    }
  }
  double probability(const Gate& g) const { return g.two_qubit() ? p2 : p1; }
};

struct ShotConfig {
  int shots = 1024;  // per Pauli term
  std::uint64_t seed = 1;
};

struct SampleResult {
  double estimate = 0.0;
  double std_error = 0.0;
};

namespace detail {

/// One sampled error: gate index and a non-identity Pauli code (1..3 on one
/// qubit, 1..15 = a + 4b on control a and target b of a CNOT).
using ErrorPattern = std::vector<std::uint32_t>;

inline std::uint32_t encode_error(std::size_t gate, int code) {
  return static_cast<std::uint32_t>(gate << 4) | static_cast<std::uint32_t>(code);
}

/// Draws gate error locations and Pauli codes for one shot.
class ErrorSampler {
 public:
  ErrorSampler(const CompiledCircuit& c, const NoiseModel& noise) : circuit_(&c) {
    p_.reserve(c.gates.size());
    bool large = false;
    for (const auto& g : c.gates) {
      p_.push_back(noise.probability(g));
      large = large || p_.back() > 0.5;
    }
    any_ = std::any_of(p_.begin(), p_.end(), [](double p) { return p > 0.0; });
    // Cumulative hazard for skipping straight to the next error; used only
    // when every probability is small enough for it to be well conditioned.
    bernoulli_ = large;
    if (!bernoulli_) {
      hazard_.resize(p_.size() + 1, 0.0);
      for (std::size_t g = 0; g < p_.size(); ++g) hazard_[g + 1] = hazard_[g] - std::log1p(-p_[g]);
    }
  }

  template <class Rng>
  void draw(Rng& rng, ErrorPattern& out) const {
    out.clear();
    if (!any_) return;
    std::uniform_int_distribution<int> one(1, 3), two(1, 15);
    auto code_for = [&](std::size_t g) { return circuit_->gates[g].two_qubit() ? two(rng) : one(rng); };
    if (bernoulli_) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t g = 0; g < p_.size(); ++g)
        if (p_[g] > 0.0 && u(rng) < p_[g]) out.push_back(encode_error(g, code_for(g)));
      return;
    }
    std::exponential_distribution<double> e(1.0);
    double t = 0.0;
    for (;;) {
      t += e(rng);
      const auto it = std::upper_bound(hazard_.begin() + 1, hazard_.end(), t);
      // hazard_[g + 1] is the first cumulative value reaching t: gate g errs.
      if (it == hazard_.end()) return;
      const auto g = static_cast<std::size_t>(it - hazard_.begin() - 1);
      out.push_back(encode_error(g, code_for(g)));
      t = hazard_[g + 1];
    }
  }

 private:
  const CompiledCircuit* circuit_;
  std::vector<double> p_;
  std::vector<double> hazard_;
  bool bernoulli_ = false;
  bool any_ = false;
};

inline void apply_error(StateVector& psi, const Gate& g, int code) {
  apply_pauli_letter(psi, g.q0, code & 3);
  if (g.two_qubit()) apply_pauli_letter(psi, g.q1, code >> 2);
}

/// Ideal states after every `stride` gates, so that a trajectory only
/// re-simulates from the checkpoint preceding its first error.
class PrefixCache {
 public:
  explicit PrefixCache(const CompiledCircuit& c) : circuit_(&c) {
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    const std::size_t budget = (std::size_t{64} << 20) / (16 * dim);  // about 64 MiB of amplitudes
    stride_ = std::max<std::size_t>(1, c.gates.size() / std::max<std::size_t>(1, budget) + 1);
    StateVector psi(c.n_qubits, 0);
    states_.push_back(psi);
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
      apply_gate(psi, c.gates[g]);
      if ((g + 1) % stride_ == 0) states_.push_back(psi);
    }
    final_ = psi;
  }

  const StateVector& ideal_final() const { return final_; }

  StateVector trajectory(const ErrorPattern& errors) const {
    if (errors.empty()) return final_;
    const std::size_t first = errors.front() >> 4;
    const std::size_t start = (first / stride_) * stride_;  // gates before `start` are ideal
    StateVector psi = states_[start / stride_];
    std::size_t next = 0;
    for (std::size_t g = start; g < circuit_->gates.size(); ++g) {
      apply_gate(psi, circuit_->gates[g]);
      while (next < errors.size() && (errors[next] >> 4) == g) apply_error(psi, circuit_->gates[g], errors[next++] & 15);
    }
    return psi;
  }

 private:
  const CompiledCircuit* circuit_;
  std::size_t stride_ = 1;
  std::vector<StateVector> states_;
  StateVector final_;
};

/// <psi| P |psi> for the bare string P.
inline double bare_expectation(const StateVector& psi, const PauliString& p) {
  const auto& a = psi.amplitudes();
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  cplx s = 0.0;
  for (std::size_t b = 0; b < a.size(); ++b) s += std::conj(a[b ^ x]) * bare_pauli_phase(x, z, b) * a[b];
  return s.real();
}

}  // namespace detail

/// Shot-sampled <h> with each non-identity term measured in its own circuit
/// executions. Per shot, gate errors are drawn as a Pauli trajectory; the
/// measurement basis change adds one noisy single-qubit gate per X or Y
/// letter, whose X or Y errors flip the measured parity. `stream` separates
/// the random streams of repeated calls under one seed.
inline SampleResult sample_expectation(const AnsatzCircuit& circuit, const std::vector<double>& theta,
                                       const PauliSum& h, const ShotConfig& shots, const NoiseModel& noise,
                                       std::uint64_t stream = 0) {
  if (shots.shots < 1) throw DomainError("sample_expectation: shots must be at least 1");
  noise.validate();
  if (h.num_qubits() != circuit.n_qubits) throw DomainError("sample_expectation: qubit count mismatch");
  const CompiledCircuit compiled = compile_circuit(circuit, theta);
  const detail::ErrorSampler sampler(compiled, noise);
  const detail::PrefixCache prefix(compiled);

  struct TermShots {
    std::map<std::size_t, int> counts;  // pattern id -> shots
    std::mt19937_64 rng;
  };
  std::map<detail::ErrorPattern, std::size_t> pattern_id;
  std::vector<const detail::ErrorPattern*> patterns;
  std::vector<TermShots> per_term;
  std::vector<std::size_t> term_index;
  SampleResult r;
  detail::ErrorPattern scratch;
  for (std::size_t t = 0; t < h.terms().size(); ++t) {
    const auto& term = h.terms()[t];
    if (term.x_mask() == 0 && term.z_mask() == 0) {
      r.estimate += term.coeff().real();
      continue;
    }
    std::seed_seq seq{shots.seed, stream, static_cast<std::uint64_t>(t)};
    TermShots ts{{}, std::mt19937_64(seq)};
    for (int s = 0; s < shots.shots; ++s) {
      sampler.draw(ts.rng, scratch);
      auto [it, fresh] = pattern_id.try_emplace(scratch, patterns.size());
      if (fresh) patterns.push_back(&it->first);
      ++ts.counts[it->second];
    }
    per_term.push_back(std::move(ts));
    term_index.push_back(t);
  }

  // Parity expectation of every (pattern, term) pair actually drawn.
  std::vector<std::vector<std::size_t>> users(patterns.size());
  for (std::size_t k = 0; k < per_term.size(); ++k)
    for (const auto& [id, n] : per_term[k].counts) users[id].push_back(k);
  std::vector<std::map<std::size_t, double>> parity(per_term.size());
  for (std::size_t id = 0; id < patterns.size(); ++id) {
    if (users[id].empty()) continue;
    const StateVector psi = prefix.trajectory(*patterns[id]);
    for (std::size_t k : users[id]) parity[k][id] = detail::bare_expectation(psi, h.terms()[term_index[k]]);
  }

  const double flip = 2.0 * noise.p1 / 3.0;
  double variance = 0.0;
  for (std::size_t k = 0; k < per_term.size(); ++k) {
    const auto& term = h.terms()[term_index[k]];
    const double c = term.coeff().real();
    const double damp = std::pow(1.0 - 2.0 * flip, popcount(term.x_mask()));
    long plus = 0;
    for (const auto& [id, n] : per_term[k].counts) {
      const double p_plus = std::clamp(0.5 * (1.0 + damp * parity[k].at(id)), 0.0, 1.0);
      plus += std::binomial_distribution<long>(n, p_plus)(per_term[k].rng);
    }
    const double n = shots.shots;
    const double mean = (2.0 * plus - n) / n;
    r.estimate += c * mean;
    if (shots.shots > 1) variance += c * c * (1.0 - mean * mean) / (n - 1.0);
  }
  r.std_error = std::sqrt(variance);
  return r;
}

/// CNOT and rotation totals under the staircase convention, 2(w - 1) per
/// exponentiated string of weight w.
struct CircuitStats {
  long cnot_count = 0;
  long rotation_count = 0;
  std::vector<int> weights;           // per exponentiated string, circuit order
  std::map<int, int> weight_histogram;  // weight -> strings
};

inline CircuitStats count_cnots(const AnsatzCircuit& c) {
  CircuitStats s;
  for (const auto& op : c.operators) {
    for (const auto& g : op.generators) {
      const int w = popcount(g.x_mask() | g.z_mask());
      if (w == 0) continue;
      s.cnot_count += 2 * (w - 1);
      ++s.rotation_count;
      s.weights.push_back(w);
      ++s.weight_histogram[w];
    }
  }
  return s;
}

}  // namespace shvqe
