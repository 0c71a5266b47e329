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
#include <functional>
#include <vector>

#include "shvqe/chem/geometry.hpp"

namespace shvqe::chem {

/// Atom permutation `perm[i] = image of atom i`.
using AtomPermutation = std::vector<int>;

/// All distance-preserving atom permutations between atoms of equal element
/// (the point-group action on the nuclei), identity included.
inline std::vector<AtomPermutation> geometry_automorphisms(const Geometry& g,
                                                           double tol = 1e-6) {
  const int n = static_cast<int>(g.size());
  std::vector<AtomPermutation> found;
  AtomPermutation perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void(int)> extend = [&](int i) {
    if (i == n) {
      found.push_back(perm);
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || g.atoms[j].symbol != g.atoms[i].symbol) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        ok = std::abs(g.distance(i, k) - g.distance(j, perm[k])) < tol;
      }
      if (!ok) continue;
      used[j] = true;
      perm[i] = j;
      extend(i + 1);
      used[j] = false;
    }
    perm[i] = -1;
  };
  extend(0);
  return found;
}

/// A maximal set of mutually commuting non-trivial involutions, chosen
/// greedily with operations fixing more atoms first (reflections through
/// atoms before those through bonds), ties broken lexicographically.
inline std::vector<AtomPermutation> commuting_involutions(const Geometry& g) {
  std::vector<AtomPermutation> inv;
  for (auto& p : geometry_automorphisms(g)) {
    bool identity = true, involution = true;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      identity = identity && p[i] == i;
      involution = involution && p[p[i]] == i;
    }
    if (!identity && involution) inv.push_back(std::move(p));
  }
  auto fixed = [](const AtomPermutation& p) {
    int f = 0;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) f += p[i] == i;
    return f;
  };
  std::stable_sort(inv.begin(), inv.end(), [&](const auto& a, const auto& b) {
    if (fixed(a) != fixed(b)) return fixed(a) > fixed(b);
    return a < b;
  });
  auto compose = [](const AtomPermutation& a, const AtomPermutation& b) {
    AtomPermutation c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  std::vector<AtomPermutation> chosen;
  std::vector<AtomPermutation> group;  // elements generated so far
  for (const auto& p : inv) {
    bool commutes = true;
    for (const auto& q : chosen) commutes = commutes && compose(p, q) == compose(q, p);
    if (!commutes) continue;
    if (std::find(group.begin(), group.end(), p) != group.end()) continue;
    chosen.push_back(p);
    const auto old = group;
    group.push_back(p);
    for (const auto& e : old) group.push_back(compose(p, e));
  }
  return chosen;
}

/// Permutation matrix acting on one s-function per atom.
inline Matrix permutation_matrix(const AtomPermutation& p) {
  const int n = static_cast<int>(p.size());
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(p[i], i) = 1.0;
  return m;
}

}  // namespace shvqe::chem
