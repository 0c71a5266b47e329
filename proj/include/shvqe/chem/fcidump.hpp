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

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shvqe/chem/integrals.hpp"

namespace shvqe::chem {

struct FcidumpData {
  IntegralSet integrals;
  int n_electrons = 0;
  int ms2 = 0;
};

/// Reads an FCIDUMP file: a namelist header (&FCI ... &END or /) carrying
/// NORB and NELEC, then "value i j k l" lines in chemists' notation with
/// 1-based indices; "i j 0 0" is a one-body term and "0 0 0 0" the core
/// constant. Unlisted permutations are filled from symmetry.
inline FcidumpData read_fcidump(std::string_view text) {
  const std::string src(text);
  std::string upper = src;
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));

  const auto begin = upper.find("&FCI");
  if (begin == std::string::npos) throw ParseError("fcidump: missing &FCI header");
  std::size_t end = upper.find("&END", begin);
  std::size_t body = end == std::string::npos ? std::string::npos : end + 4;
  {
    // Fortran namelists may also close with a lone '/'.
    const auto slash = upper.find('/', begin);
    if (slash != std::string::npos && (end == std::string::npos || slash < end)) {
      end = slash;
      body = slash + 1;
    }
  }
  if (end == std::string::npos) throw ParseError("fcidump: unterminated header");

  // Tokenize "KEY = v1, v2, ..." pairs; a key is any token followed by '='.
  std::map<std::string, std::string> fields;
  {
    std::string header;
    for (char ch : upper.substr(begin + 4, end - begin - 4)) {
      if (ch == ',') header += ' ';
      else if (ch == '=') header += " = ";
      else header += ch;
    }
    std::istringstream hs(header);
    std::vector<std::string> tok;
    for (std::string t; hs >> t;) tok.push_back(t);
    for (std::size_t i = 0; i + 1 < tok.size(); ++i) {
      if (tok[i + 1] != "=") continue;
      std::string value;
      std::size_t j = i + 2;
      for (; j < tok.size() && !(j + 1 < tok.size() && tok[j + 1] == "="); ++j) {
        value += tok[j] + ' ';
      }
      fields[tok[i]] = value;
      i = j - 1;
    }
  }
  auto int_field = [&](const std::string& key, bool required, int fallback) {
    auto it = fields.find(key);
    if (it == fields.end()) {
      if (required) throw ParseError("fcidump: header lacks " + key);
      return fallback;
    }
    std::istringstream in(it->second);
    int out = 0;
    if (!(in >> out)) throw ParseError("fcidump: bad value for " + key);
    return out;
  };

  FcidumpData data;
  const int n = int_field("NORB", true, 0);
  if (n <= 0) throw ParseError("fcidump: NORB must be positive");
  data.n_electrons = int_field("NELEC", true, 0);
  data.ms2 = int_field("MS2", false, 0);
  data.integrals = IntegralSet::zeros(n, "fcidump");

  std::istringstream in(src.substr(body));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (auto& ch : line)
      if (ch == 'D' || ch == 'd') ch = 'E';
    std::istringstream ls(line);
    double v = 0;
    int i = 0, j = 0, k = 0, l = 0;
    if (!(ls >> v >> i >> j >> k >> l)) {
      throw ParseError("fcidump: malformed integral line " + std::to_string(line_no) + ": '" +
                       line + "'");
    }
    for (int idx : {i, j, k, l}) {
      if (idx < 0 || idx > n) {
        throw ParseError("fcidump: orbital index " + std::to_string(idx) + " out of range 0.." +
                         std::to_string(n));
      }
    }
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      data.integrals.e_nuclear = v;
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0) throw ParseError("fcidump: one-body line with a zero index");
      data.integrals.one_body(i - 1, j - 1) = v;
      data.integrals.one_body(j - 1, i - 1) = v;
    } else if (i == 0 || j == 0 || k == 0 || l == 0) {
      // Orbital energies (i 0 0 0) carry no Hamiltonian information.
      continue;
    } else {
      data.integrals.two_body.set_symmetric(i - 1, j - 1, k - 1, l - 1, v);
    }
  }
  return data;
}

/// Writes the unique (i>=j, k>=l, ij>=kl) integrals with |value| > cutoff.
inline std::string write_fcidump(const IntegralSet& s, int n_electrons, int ms2 = 0,
                                 double cutoff = 1e-14) {
  const int n = s.n_orbitals;
  std::ostringstream out;
  out << "&FCI NORB=" << n << ",NELEC=" << n_electrons << ",MS2=" << ms2 << ",\n ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  char buf[96];
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%24.17E %4d %4d %4d %4d\n", v, i, j, k, l);
    out << buf;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * n + j < k * n + l) continue;
          const double v = s.two_body(i, j, k, l);
          if (std::abs(v) > cutoff) emit(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = s.one_body(i, j);
      if (std::abs(v) > cutoff) emit(v, i + 1, j + 1, 0, 0);
    }
  emit(s.e_nuclear, 0, 0, 0, 0);
  return out.str();
}

}  // namespace shvqe::chem
