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
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shvqe/common.hpp"

namespace shvqe::chem {

struct Atom {
  std::string symbol;
  Eigen::Vector3d position;  // Angstrom
};

/// Molecular geometry. Positions are stored in Angstrom, as written in the
/// input; conversion to bohr happens inside the integral code.
struct Geometry {
  std::vector<Atom> atoms;
  int charge = 0;

  std::size_t size() const { return atoms.size(); }

  double distance(std::size_t i, std::size_t j) const {
    return (atoms.at(i).position - atoms.at(j).position).norm();
  }

  int nuclear_charge_sum() const;
  int electron_count() const { return nuclear_charge_sum() - charge; }
};

namespace detail {

inline constexpr std::array<std::string_view, 36> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr"};

inline std::string normalize_symbol(std::string s) {
  if (s.empty()) return s;
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (std::size_t i = 1; i < s.size(); ++i) {
    s[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  }
  return s;
}

}  // namespace detail

/// Atomic number of an element symbol, or 0 when the symbol is unknown.
inline int atomic_number(std::string_view symbol) {
  for (std::size_t i = 0; i < detail::kElements.size(); ++i) {
    if (detail::kElements[i] == symbol) return static_cast<int>(i) + 1;
  }
  return 0;
}

inline int Geometry::nuclear_charge_sum() const {
  int z = 0;
  for (const auto& a : atoms) z += atomic_number(a.symbol);
  return z;
}

/// Throws DomainError unless the geometry has at least one atom and no two
/// atoms coincide.
inline void validate(const Geometry& g) {
  if (g.atoms.empty()) throw DomainError("geometry has no atoms");
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!(g.distance(i, j) > 1e-8)) {
        throw DomainError("atoms " + std::to_string(i + 1) + " and " +
                          std::to_string(j + 1) + " coincide");
      }
    }
  }
}

/// Parses XYZ text: atom count line, comment line, then one
/// "symbol x y z" line per atom (Angstrom).
inline Geometry parse_xyz(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(std::string("xyz: missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  do {
    next_line("atom count line");
  } while (line.find_first_not_of(" \t") == std::string::npos);

  std::istringstream count_line(line);
  long count = -1;
  std::string trailing;
  if (!(count_line >> count) || (count_line >> trailing) || count < 1) {
    throw ParseError("xyz: malformed atom count line '" + line + "'");
  }
  next_line("comment line");

  Geometry g;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream atom_line(line);
    std::string sym;
    double x = 0, y = 0, z = 0;
    if (!(atom_line >> sym >> x >> y >> z) || (atom_line >> trailing)) {
      throw ParseError("xyz: malformed atom line '" + line + "'");
    }
    sym = detail::normalize_symbol(sym);
    if (atomic_number(sym) == 0) throw ParseError("xyz: unknown element '" + sym + "'");
    g.atoms.push_back({sym, Eigen::Vector3d(x, y, z)});
  }
  if (static_cast<long>(g.atoms.size()) != count) {
    throw ParseError("xyz: header declares " + std::to_string(count) + " atoms but " +
                     std::to_string(g.atoms.size()) + " were listed");
  }
  validate(g);
  return g;
}

inline std::string to_xyz(const Geometry& g, std::string_view comment = "") {
  std::ostringstream out;
  out.precision(12);
  out << g.atoms.size() << '\n' << comment << '\n';
  for (const auto& a : g.atoms) {
    out << a.symbol << ' ' << a.position.x() << ' ' << a.position.y() << ' '
        << a.position.z() << '\n';
  }
  return out.str();
}

// Parametric hydrogen clusters; r is the nearest-neighbour H-H distance.

inline Geometry make_h2(double r) {
  return {{{"H", {0, 0, 0}}, {"H", {0, 0, r}}}, 0};
}

/// Square of side r in the xy plane, atoms on the diagonals.
inline Geometry make_h4_square(double r) {
  const double h = r / 2;
  return {{{"H", {h, h, 0}}, {"H", {-h, h, 0}}, {"H", {-h, -h, 0}}, {"H", {h, -h, 0}}}, 0};
}

inline Geometry make_h4_chain(double r) {
  Geometry g;
  for (int i = 0; i < 4; ++i) g.atoms.push_back({"H", {0, 0, i * r}});
  return g;
}

/// Regular hexagon of side r (circumradius equals the side).
inline Geometry make_h6_hexagon(double r) {
  Geometry g;
  for (int k = 0; k < 6; ++k) {
    const double phi = k * std::numbers::pi / 3;
    g.atoms.push_back({"H", {r * std::cos(phi), r * std::sin(phi), 0}});
  }
  return g;
}

}  // namespace shvqe::chem
