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
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shvqe/common.hpp"

namespace shvqe {

/// Phased tensor product of Pauli letters over at most 64 qubits.
///
/// Letters are stored symplectically: qubit q carries X if only x bit q is
/// set, Z if only z bit q is set, Y if both. The coefficient multiplies the
/// product of the letter matrices themselves (Y, not iXZ), so "XY" with
/// coefficient 1 is the Hermitian operator X (x) Y. Qubit 0 is the printed
/// qubit 1; letter strings are printed highest qubit first.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x, std::uint64_t z, cplx coeff = 1.0)
      : n_(n_qubits), x_(x), z_(z), coeff_(coeff) {
    check_width();
  }

  static PauliString identity(int n_qubits, cplx coeff = 1.0) { return {n_qubits, 0, 0, coeff}; }

  /// From letters written highest qubit first, e.g. "XY" = X_2 Y_1.
  static PauliString from_letters(std::string_view letters, cplx coeff = 1.0) {
    const int n = static_cast<int>(letters.size());
    std::uint64_t x = 0, z = 0;
    for (int i = 0; i < n; ++i) {
      const int q = n - 1 - i;
      switch (letters[static_cast<std::size_t>(i)]) {
        case 'I': break;
        case 'X': x |= std::uint64_t{1} << q; break;
        case 'Y': x |= std::uint64_t{1} << q; z |= std::uint64_t{1} << q; break;
        case 'Z': z |= std::uint64_t{1} << q; break;
        default: throw ParseError("invalid Pauli letter in '" + std::string(letters) + "'");
      }
    }
    return {n, x, z, coeff};
  }

  /// Single letter on qubit q (0-based).
  static PauliString single(int n_qubits, int q, char letter, cplx coeff = 1.0) {
    const std::uint64_t m = std::uint64_t{1} << q;
    switch (letter) {
      case 'X': return {n_qubits, m, 0, coeff};
      case 'Y': return {n_qubits, m, m, coeff};
      case 'Z': return {n_qubits, 0, m, coeff};
      case 'I': return identity(n_qubits, coeff);
      default: throw DomainError(std::string("invalid Pauli letter ") + letter);
    }
  }

  int num_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  cplx coeff() const { return coeff_; }
  void set_coeff(cplx c) { coeff_ = c; }
  int weight() const { return popcount(x_ | z_); }
  bool is_identity() const { return (x_ | z_) == 0; }

  char letter(int q) const {
    const bool xb = bit(x_, q), zb = bit(z_, q);
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }

  /// Letters, highest qubit first.
  std::string letters() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(n_));
    for (int q = n_ - 1; q >= 0; --q) s += letter(q);
    return s;
  }

  /// Compact form with 1-based qubit subscripts, e.g. "Y6X5X4" or "I".
  std::string label() const {
    std::string s;
    for (int q = n_ - 1; q >= 0; --q) {
      if (letter(q) != 'I') s += letter(q) + std::to_string(q + 1);
    }
    return s.empty() ? "I" : s;
  }

  /// Whether the letter patterns coincide (coefficients ignored).
  bool same_pattern(const PauliString& o) const { return x_ == o.x_ && z_ == o.z_; }

  bool commutes_with(const PauliString& o) const {
    return (popcount((x_ & o.z_) ^ (z_ & o.x_)) & 1) == 0;
  }

  /// Action on a computational basis ket: P|b> = amplitude |target>.
  std::pair<std::uint64_t, cplx> apply_to_basis(std::uint64_t b) const {
    return {b ^ x_, coeff_ * letter_phase(b)};
  }

  /// Phase of the bare letter product on |b>: i^{#Y} (-1)^{|z & b|}.
  cplx letter_phase(std::uint64_t b) const {
    static constexpr cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const int e = (popcount(x_ & z_) + 2 * popcount(z_ & b)) & 3;
    return kPowI[e];
  }

  PauliString adjoint() const { return {n_, x_, z_, std::conj(coeff_)}; }

  friend PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) throw DomainError("pauli_multiply: qubit counts differ");
    static constexpr cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t x = a.x_ ^ b.x_;
    const std::uint64_t z = a.z_ ^ b.z_;
    // With Y = i X Z:  (i^{|x1 z1|} X^x1 Z^z1)(i^{|x2 z2|} X^x2 Z^z2)
    //   = i^{|x1 z1| + |x2 z2| + 2|z1 x2| - |x z|} (i^{|x z|} X^x Z^z).
    const int e = (popcount(a.x_ & a.z_) + popcount(b.x_ & b.z_) + 2 * popcount(a.z_ & b.x_) -
                   popcount(x & z) + 4 * 64) &
                  3;
    return {a.n_, x, z, a.coeff_ * b.coeff_ * kPowI[e]};
  }

  PauliString operator*(cplx s) const { return {n_, x_, z_, coeff_ * s}; }

 private:
  void check_width() const {
    if (n_ < 0 || n_ > 64) throw DomainError("PauliString supports 0..64 qubits");
    if (n_ < 64) {
      const std::uint64_t outside = ~((std::uint64_t{1} << n_) - 1);
      if ((x_ | z_) & outside) throw DomainError("Pauli letters beyond the qubit count");
    }
  }

  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  cplx coeff_{1.0, 0.0};
};

inline PauliString pauli_multiply(const PauliString& a, const PauliString& b) { return a * b; }

/// Formats a complex number as "a", "bi" or "a+bi".
inline std::string format_coefficient(cplx c, int precision = 17) {
  char re[64], im[64];
  std::snprintf(re, sizeof re, "%.*g", precision, c.real());
  std::snprintf(im, sizeof im, "%.*g", precision, c.imag());
  if (c.imag() == 0.0) return re;
  if (c.real() == 0.0) return std::string(im) + "i";
  return std::string(re) + (c.imag() < 0 ? "" : "+") + im + "i";
}

inline cplx parse_coefficient(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty coefficient");
  auto parse_real = [&](const std::string& t) {
    if (t == "" || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ParseError("bad coefficient '" + s + "'");
    }
    if (used != t.size()) throw ParseError("bad coefficient '" + s + "'");
    return v;
  };
  if (s.back() != 'i') return parse_real(s);
  s.pop_back();
  // Split a+b at the last sign that is not part of an exponent.
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      return {parse_real(s.substr(0, k)), parse_real(s.substr(k))};
    }
  }
  return {0.0, parse_real(s)};
}

/// Sum of Pauli strings on a fixed register, kept simplified: one term per
/// letter pattern, sorted by (x, z) masks, terms below the drop tolerance
/// removed.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}
  PauliSum(int n_qubits, std::vector<PauliString> terms) : n_(n_qubits), terms_(std::move(terms)) {
    for (const auto& t : terms_) check(t);
    simplify();
  }

  static PauliSum identity(int n_qubits, cplx c = 1.0) {
    return PauliSum(n_qubits, {PauliString::identity(n_qubits, c)});
  }

  int num_qubits() const { return n_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const PauliString& t) {
    check(t);
    terms_.push_back(t);
  }

  /// Merges equal patterns and drops |coefficient| <= tol.
  PauliSum& simplify(double tol = 1e-12) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> acc;
    for (const auto& t : terms_) acc[{t.x_mask(), t.z_mask()}] += t.coeff();
    terms_.clear();
    for (const auto& [key, c] : acc) {
      if (std::abs(c) > tol) terms_.emplace_back(n_, key.first, key.second, c);
    }
    return *this;
  }

  PauliSum adjoint() const {
    PauliSum out(n_);
    for (const auto& t : terms_) out.terms_.push_back(t.adjoint());
    return out;
  }

  bool is_hermitian(double tol = 1e-10) const {
    for (const auto& t : terms_)
      if (std::abs(t.coeff().imag()) > tol) return false;
    return true;
  }

  bool is_anti_hermitian(double tol = 1e-10) const {
    for (const auto& t : terms_)
      if (std::abs(t.coeff().real()) > tol) return false;
    return true;
  }

  /// Coefficient of a letter pattern (0 if absent).
  cplx coefficient_of(const PauliString& pattern) const {
    for (const auto& t : terms_)
      if (t.same_pattern(pattern)) return t.coeff();
    return 0.0;
  }

  PauliSum& operator+=(const PauliSum& o) {
    if (o.n_ != n_) throw DomainError("PauliSum: qubit counts differ");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return simplify();
  }
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a += b * cplx(-1.0); }

  PauliSum operator*(cplx s) const {
    PauliSum out(n_);
    for (const auto& t : terms_) out.terms_.push_back(t * s);
    return out.simplify();
  }

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_) throw DomainError("PauliSum: qubit counts differ");
    PauliSum out(a.n_);
    out.terms_.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.terms_.push_back(s * t);
    return out.simplify();
  }

  /// One term per line: "coefficient letters", letters highest qubit first.
  std::string to_text() const {
    std::string out;
    for (const auto& t : terms_) out += format_coefficient(t.coeff()) + ' ' + t.letters() + '\n';
    return out;
  }

  static PauliSum from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int n = -1;
    std::vector<PauliString> terms;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ls(line);
      std::string coeff, letters, extra;
      if (!(ls >> coeff >> letters) || (ls >> extra)) {
        throw ParseError("pauli sum: malformed line '" + line + "'");
      }
      if (n < 0) n = static_cast<int>(letters.size());
      if (static_cast<int>(letters.size()) != n) {
        throw ParseError("pauli sum: inconsistent qubit count in '" + line + "'");
      }
      terms.push_back(PauliString::from_letters(letters, parse_coefficient(coeff)));
    }
    if (n < 0) throw ParseError("pauli sum: no terms");
    return PauliSum(n, std::move(terms));
  }

 private:
  void check(const PauliString& t) const {
    if (t.num_qubits() != n_) throw DomainError("PauliSum: term has the wrong qubit count");
  }

  int n_ = 0;
  std::vector<PauliString> terms_;
};

}  // namespace shvqe
