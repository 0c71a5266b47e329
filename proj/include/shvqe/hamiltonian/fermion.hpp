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
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "shvqe/chem/integrals.hpp"
#include "shvqe/common.hpp"

namespace shvqe {

/// Occupation bitstring over 2N spin-orbitals: bit i is spin-orbital i+1,
/// spin-up orbitals 1..N first, spin-down orbitals N+1..2N after them.
struct FockState {
  std::uint64_t bits = 0;
  int n_spin_orbitals = 0;

  int n_up() const { return popcount(bits & ((std::uint64_t{1} << (n_spin_orbitals / 2)) - 1)); }
  int n_down() const { return popcount(bits >> (n_spin_orbitals / 2)); }
  std::string to_string() const { return bits_to_string(bits, n_spin_orbitals); }
  friend bool operator==(const FockState&, const FockState&) = default;
};

struct LadderOp {
  int mode = 0;  // 0-based spin-orbital
  bool creation = false;
  friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

inline LadderOp cre(int mode) { return {mode, true}; }
inline LadderOp ann(int mode) { return {mode, false}; }

struct FermionTerm {
  cplx coeff{1.0, 0.0};
  std::vector<LadderOp> ops;  // leftmost operator acts last
};

/// Linear combination of products of creation/annihilation operators.
class FermionOp {
 public:
  FermionOp() = default;
  explicit FermionOp(int n_modes) : n_(n_modes) {}
  FermionOp(int n_modes, std::vector<FermionTerm> terms) : n_(n_modes), terms_(std::move(terms)) {
    for (const auto& t : terms_) check(t);
  }

  static FermionOp identity(int n_modes, cplx c = 1.0) { return FermionOp(n_modes, {{c, {}}}); }
  static FermionOp term(int n_modes, cplx c, std::vector<LadderOp> ops) {
    return FermionOp(n_modes, {{c, std::move(ops)}});
  }

  int num_modes() const { return n_; }
  const std::vector<FermionTerm>& terms() const { return terms_; }

  void add(cplx c, std::vector<LadderOp> ops) {
    FermionTerm t{c, std::move(ops)};
    check(t);
    terms_.push_back(std::move(t));
  }

  FermionOp& operator+=(const FermionOp& o) {
    if (o.n_ != n_) throw DomainError("FermionOp: mode counts differ");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
  }
  friend FermionOp operator+(FermionOp a, const FermionOp& b) { return a += b; }
  friend FermionOp operator-(FermionOp a, const FermionOp& b) { return a += b * cplx(-1.0); }

  FermionOp operator*(cplx s) const {
    FermionOp out = *this;
    for (auto& t : out.terms_) t.coeff *= s;
    return out;
  }

  friend FermionOp operator*(const FermionOp& a, const FermionOp& b) {
    if (a.n_ != b.n_) throw DomainError("FermionOp: mode counts differ");
    FermionOp out(a.n_);
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        FermionTerm p{s.coeff * t.coeff, s.ops};
        p.ops.insert(p.ops.end(), t.ops.begin(), t.ops.end());
        out.terms_.push_back(std::move(p));
      }
    return out;
  }

  FermionOp adjoint() const {
    FermionOp out(n_);
    for (const auto& t : terms_) {
      FermionTerm a{std::conj(t.coeff), {}};
      for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) a.ops.push_back({it->mode, !it->creation});
      out.terms_.push_back(std::move(a));
    }
    return out;
  }

  /// Canonical normal order: creators left of annihilators, each group in
  /// descending mode order; repeated operators vanish and equal products are
  /// merged. Anticommutator contractions generate the lower-rank terms.
  FermionOp normal_ordered(double tol = 1e-12) const {
    std::map<std::vector<LadderOp>, cplx> acc;
    std::vector<FermionTerm> work = terms_;
    while (!work.empty()) {
      FermionTerm t = std::move(work.back());
      work.pop_back();
      bool swapped = false;
      for (std::size_t i = 1; i < t.ops.size() && !swapped; ++i) {
        for (std::size_t j = i; j > 0; --j) {
          const LadderOp l = t.ops[j - 1], r = t.ops[j];
          const bool out_of_order = (!l.creation && r.creation) ||
                                    (l.creation == r.creation && l.mode < r.mode);
          if (!out_of_order) {
            if (l.creation == r.creation && l.mode == r.mode) {
              t.coeff = 0.0;  // a_i a_i = 0
              swapped = true;
            }
            break;
          }
          // l r = -r l + {l, r}
          if (!l.creation && r.creation && l.mode == r.mode) {
            FermionTerm contracted{t.coeff, {}};
            contracted.ops.assign(t.ops.begin(), t.ops.begin() + static_cast<long>(j) - 1);
            contracted.ops.insert(contracted.ops.end(), t.ops.begin() + static_cast<long>(j) + 1,
                                  t.ops.end());
            work.push_back(std::move(contracted));
          }
          std::swap(t.ops[j - 1], t.ops[j]);
          t.coeff = -t.coeff;
        }
        if (t.coeff == cplx(0.0)) break;
      }
      if (t.coeff == cplx(0.0)) continue;
      if (!is_canonical(t.ops)) {
        work.push_back(std::move(t));
        continue;
      }
      acc[t.ops] += t.coeff;
    }
    FermionOp out(n_);
    for (auto& [ops, c] : acc)
      if (std::abs(c) > tol) out.terms_.push_back({c, ops});
    return out;
  }

  /// Applies the operator to a Fock basis state, returning (state, amplitude)
  /// pairs with duplicates merged. Annihilating mode i on f picks up
  /// (-1)^{f_1 + ... + f_{i-1}}.
  std::vector<std::pair<std::uint64_t, cplx>> apply(std::uint64_t f) const {
    std::map<std::uint64_t, cplx> acc;
    for (const auto& t : terms_) {
      auto [g, sign] = apply_term(t.ops, f);
      if (sign != 0) acc[g] += t.coeff * static_cast<double>(sign);
    }
    std::vector<std::pair<std::uint64_t, cplx>> out;
    for (const auto& [g, c] : acc)
      if (std::abs(c) > 1e-14) out.emplace_back(g, c);
    return out;
  }

  /// Applies one operator string; sign 0 means the result vanished.
  static std::pair<std::uint64_t, int> apply_term(const std::vector<LadderOp>& ops,
                                                  std::uint64_t f) {
    int sign = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      const std::uint64_t m = std::uint64_t{1} << it->mode;
      if (it->creation == ((f & m) != 0)) return {f, 0};
      if (popcount(f & (m - 1)) & 1) sign = -sign;
      f ^= m;
    }
    return {f, sign};
  }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& t : terms_) {
      out << t.coeff;
      for (const auto& o : t.ops) out << " a" << (o.creation ? "+" : "") << (o.mode + 1);
      out << '\n';
    }
    return out.str();
  }

 private:
  static bool is_canonical(const std::vector<LadderOp>& ops) {
    for (std::size_t i = 1; i < ops.size(); ++i) {
      const LadderOp l = ops[i - 1], r = ops[i];
      if (!l.creation && r.creation) return false;
      if (l.creation == r.creation && l.mode <= r.mode) return false;
    }
    return true;
  }

  void check(const FermionTerm& t) const {
    for (const auto& o : t.ops)
      if (o.mode < 0 || o.mode >= n_) throw DomainError("FermionOp: mode index out of range");
  }

  int n_ = 0;
  std::vector<FermionTerm> terms_;
};

/// Difference of two operators after normal ordering, as the largest
/// remaining coefficient magnitude.
inline double max_difference(const FermionOp& a, const FermionOp& b) {
  const FermionOp d = (a - b).normal_ordered();
  double worst = 0.0;
  for (const auto& t : d.terms()) worst = std::max(worst, std::abs(t.coeff));
  return worst;
}

/// Spin-orbital index of spatial orbital p (0-based) with spin up or down.
inline int spin_orbital(int p, bool up, int n_orbitals) { return up ? p : p + n_orbitals; }

struct HamiltonianOptions {
  bool include_nuclear_repulsion = true;
  double drop_tolerance = 1e-14;
};

/// Second-quantized electronic Hamiltonian over 2N spin-orbitals:
///   H = sum_{pq,s} h_pq a+_{ps} a_{qs}
///     + 1/2 sum_{pqrs,s,l} h_pqrs a+_{ps} a+_{ql} a_{rl} a_{ss}
/// with h_pqrs = (ps|qr), plus the nuclear repulsion as a constant.
inline FermionOp build_fermionic_hamiltonian(const chem::IntegralSet& ints,
                                             const HamiltonianOptions& opt = {}) {
  const int n = ints.n_orbitals;
  if (chem::one_body_asymmetry(ints) > 1e-10 || chem::two_body_asymmetry(ints.two_body) > 1e-10) {
    throw DomainError("build_fermionic_hamiltonian: integrals are not symmetric");
  }
  FermionOp h(2 * n);
  if (opt.include_nuclear_repulsion && ints.e_nuclear != 0.0) h.add(ints.e_nuclear, {});
  for (bool up : {true, false})
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const double v = ints.one_body(p, q);
        if (std::abs(v) <= opt.drop_tolerance) continue;
        h.add(v, {cre(spin_orbital(p, up, n)), ann(spin_orbital(q, up, n))});
      }
  for (bool s_up : {true, false})
    for (bool l_up : {true, false})
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
              const int ps = spin_orbital(p, s_up, n), ql = spin_orbital(q, l_up, n);
              const int rl = spin_orbital(r, l_up, n), ss = spin_orbital(s, s_up, n);
              if (ps == ql || rl == ss) continue;
              const double v = ints.two_body(p, s, q, r);
              if (std::abs(v) <= opt.drop_tolerance) continue;
              h.add(0.5 * v, {cre(ps), cre(ql), ann(rl), ann(ss)});
            }
  return h;
}

/// Total spin squared, S^2 = S- S+ + Sz (Sz + 1), over n spatial orbitals.
inline FermionOp spin_squared_operator(int n) {
  FermionOp sz(2 * n), splus(2 * n), sminus(2 * n);
  for (int p = 0; p < n; ++p) {
    sz.add(0.5, {cre(p), ann(p)});
    sz.add(-0.5, {cre(p + n), ann(p + n)});
    splus.add(1.0, {cre(p), ann(p + n)});
    sminus.add(1.0, {cre(p + n), ann(p)});
  }
  return (sminus * splus + sz * (sz + FermionOp::identity(2 * n))).normal_ordered();
}

}  // namespace shvqe
