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

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace shvqe {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Raised when an input violates a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// SCF or optimizer did not reach its convergence criterion.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kBohrInAngstrom = 0.529177210903;
inline constexpr double kHartreeInEv = 27.2114;
/// 1 kcal/mol per molecule.
inline constexpr double kChemicalAccuracyEv = 0.043;
inline constexpr double kChemicalAccuracyHartree = kChemicalAccuracyEv / kHartreeInEv;

inline int popcount(std::uint64_t v) { return std::popcount(v); }

inline bool bit(std::uint64_t v, int i) { return ((v >> i) & 1u) != 0; }

/// Bitstring of `n` bits, most significant (highest index) first.
inline std::string bits_to_string(std::uint64_t v, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if (bit(v, i)) s[static_cast<std::size_t>(n - 1 - i)] = '1';
  }
  return s;
}

inline std::uint64_t bits_from_string(const std::string& s) {
  std::uint64_t v = 0;
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i) {
    const char c = s[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1') throw ParseError("invalid bitstring '" + s + "'");
    if (c == '1') v |= std::uint64_t{1} << (n - 1 - i);
  }
  return v;
}

}  // namespace shvqe
