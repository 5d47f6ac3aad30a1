// Copyright 2026 The qkge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <string>
#include <vector>

#include "qkge/circuits/circuit.hpp"
#include "qkge/qtree/amplitude_tree.hpp"

namespace qkge {

enum class ModelKind { qce, fqce, rescal, distmult, complex_bilinear, tucker };

bool is_quantum(ModelKind kind);
std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

// Either quantum embedding model over n qubits (R = 2^n amplitudes).
//
// qce:  entities are unit-norm real R-vectors loaded through amplitude
//       trees; predicates are trainable circuits.
// fqce: entities and predicates are both trainable circuits; entity
//       circuits carry a Hadamard prelude.
struct QuantumModel {
  ModelKind kind = ModelKind::fqce;
  int n_qubits = 0;
  CircuitSpec entity_spec;  // fqce only
  CircuitSpec pred_spec;
  std::vector<ParamStore> entity_params;         // fqce
  std::vector<std::vector<double>> entity_vecs;  // qce, unit norm
  std::vector<AmplitudeTree> entity_trees;       // qce, mirrors entity_vecs
  std::vector<ParamStore> pred_params;

  std::size_t n_entities() const noexcept {
    return kind == ModelKind::qce ? entity_vecs.size() : entity_params.size();
  }
  std::size_t n_predicates() const noexcept { return pred_params.size(); }
  std::size_t rank() const noexcept { return std::size_t{1} << n_qubits; }

  StateVector entity_state(std::size_t e) const;

  // Conditioned embedding of entity e's preparation into a larger register.
  void entity_state_into(std::size_t e, StateVector& state, int first_qubit,
                         std::uint64_t ctrl_mask, std::uint64_t ctrl_value) const;

  // Rebuilds entity e's tree from entity_vecs[e] entry by entry (qce).
  void refresh_tree(std::size_t e);

  void check_triple(std::size_t s, std::size_t p, std::size_t o) const;
};

}  // namespace qkge
