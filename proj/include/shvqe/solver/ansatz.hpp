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

#include <vector>

#include "shvqe/pool/excitation.hpp"
#include "shvqe/simulator/statevector.hpp"

namespace shvqe {

enum class TermMode { kSingle, kAll };

/// Ansatz from excitation operators in the given order, starting from the
/// sector basis state with qubit label `initial_label`. Single mode uses one
/// unit rotation per operator; all mode uses every string of the qubit image.
inline AnsatzCircuit build_ansatz(const std::vector<ExcitationOperator>& ops, int n_qubits,
                                  std::uint64_t initial_label, TermMode mode) {
  AnsatzCircuit c{n_qubits, initial_label, {}};
  for (const auto& op : ops) {
    if (op.qubit_terms.empty()) throw DomainError("build_ansatz: operator " + op.label() + " has no qubit image");
    AnsatzOperator a;
    a.label = op.label();
    if (mode == TermMode::kSingle) {
      a.generators.push_back(op.selected_term);
    } else {
      a.generators = op.qubit_terms.terms();
    }
    c.operators.push_back(std::move(a));
  }
  return c;
}

}  // namespace shvqe
