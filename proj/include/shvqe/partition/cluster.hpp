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
#include <vector>

#include "shvqe/common.hpp"

namespace shvqe {

struct PartitionConfig {
  /// Edge threshold on |H_ij|, Hartree.
  double cutoff = 1e-6;
};

/// A block of sector indices closed under the Hamiltonian. Members ascend.
struct Subspace {
  std::vector<std::size_t> members;

  std::size_t dimension() const { return members.size(); }
  bool contains(std::size_t i) const {
    return std::binary_search(members.begin(), members.end(), i);
  }
  /// Position of sector index i inside the subspace, or size() if absent.
  std::size_t local_index(std::size_t i) const {
    auto it = std::lower_bound(members.begin(), members.end(), i);
    return (it != members.end() && *it == i) ? static_cast<std::size_t>(it - members.begin())
                                             : members.size();
  }
};

/// Connected components of the graph with an edge wherever |H_ij| > cutoff
/// (i != j), by pairwise cluster assignment with merging. Nodes without
/// edges form singletons. Sorted by (dimension, lowest member).
inline std::vector<Subspace> cluster_graph(const Matrix& h, const PartitionConfig& cfg = {}) {
  if (h.rows() != h.cols()) throw DomainError("cluster_graph: matrix is not square");
  if (!(cfg.cutoff > 0)) throw DomainError("cluster_graph: cutoff must be positive");
  const auto n = static_cast<std::size_t>(h.rows());
  constexpr int kNone = -1;
  std::vector<int> cluster(n, kNone);
  std::vector<std::vector<std::size_t>> nodes;  // members of each live cluster id

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      if (!(std::abs(h(ii, jj)) > cfg.cutoff)) continue;
      int& ci = cluster[i];
      int& cj = cluster[j];
      if (ci == kNone && cj == kNone) {
        ci = cj = static_cast<int>(nodes.size());
        nodes.push_back({i, j});
      } else if (ci == kNone) {
        ci = cj;
        nodes[static_cast<std::size_t>(cj)].push_back(i);
      } else if (cj == kNone) {
        cj = ci;
        nodes[static_cast<std::size_t>(ci)].push_back(j);
      } else if (ci != cj) {
        // Merge: relabel every node of cluster cj into ci.
        const int keep = ci, gone = cj;
        for (std::size_t k : nodes[static_cast<std::size_t>(gone)]) cluster[k] = keep;
        auto& dst = nodes[static_cast<std::size_t>(keep)];
        auto& src = nodes[static_cast<std::size_t>(gone)];
        dst.insert(dst.end(), src.begin(), src.end());
        src.clear();
      }
    }
  }

  std::vector<Subspace> out;
  for (auto& members : nodes) {
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    out.push_back({members});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cluster[i] == kNone) out.push_back({{i}});
  std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return a.members.front() < b.members.front();
  });
  return out;
}

/// Member with the lowest diagonal element; near-ties (1e-9) go to the
/// lowest sector index.
inline std::size_t choose_initial_state(const Subspace& s, const Matrix& h) {
  if (s.members.empty()) throw DomainError("choose_initial_state: empty subspace");
  std::size_t best = s.members.front();
  for (std::size_t m : s.members) {
    const auto mm = static_cast<Eigen::Index>(m), bb = static_cast<Eigen::Index>(best);
    if (h(mm, mm) < h(bb, bb) - 1e-9) best = m;
  }
  return best;
}

/// Index of the subspace holding sector index i.
inline std::size_t subspace_of(const std::vector<Subspace>& parts, std::size_t i) {
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (parts[k].contains(i)) return k;
  throw DomainError("subspace_of: index not covered by the partition");
}

/// Restriction of a sector matrix to a subspace, in member order.
inline Matrix restrict_matrix(const Matrix& h, const Subspace& s) {
  const auto d = static_cast<Eigen::Index>(s.dimension());
  Matrix out(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      out(a, b) = h(static_cast<Eigen::Index>(s.members[static_cast<std::size_t>(a)]),
                    static_cast<Eigen::Index>(s.members[static_cast<std::size_t>(b)]));
    }
  return out;
}

}  // namespace shvqe
