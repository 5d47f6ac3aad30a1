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
#include "qkge/model/quantum_model.hpp"

#include <stdexcept>

namespace qkge {

bool is_quantum(ModelKind kind) {
  return kind == ModelKind::qce || kind == ModelKind::fqce;
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::qce: return "qce";
    case ModelKind::fqce: return "fqce";
    case ModelKind::rescal: return "rescal";
    case ModelKind::distmult: return "distmult";
    case ModelKind::complex_bilinear: return "complex";
    case ModelKind::tucker: return "tucker";
  }
  throw std::invalid_argument("to_string: bad ModelKind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "qce") return ModelKind::qce;
  if (name == "fqce") return ModelKind::fqce;
  if (name == "rescal") return ModelKind::rescal;
  if (name == "distmult") return ModelKind::distmult;
  if (name == "complex") return ModelKind::complex_bilinear;
  if (name == "tucker") return ModelKind::tucker;
  throw std::invalid_argument("unknown model '" + name +
                              "' (expected qce, fqce, rescal, distmult, "
                              "complex, or tucker)");
}

StateVector QuantumModel::entity_state(std::size_t e) const {
  if (e >= n_entities()) {
    throw std::out_of_range("entity_state: entity out of range");
  }
  if (kind == ModelKind::qce) return entity_trees[e].prepare_state();
  return circuit_entity_state(entity_spec, entity_params[e]);
}

void QuantumModel::entity_state_into(std::size_t e, StateVector& state,
                                     int first_qubit, std::uint64_t ctrl_mask,
                                     std::uint64_t ctrl_value) const {
  if (e >= n_entities()) {
    throw std::out_of_range("entity_state_into: entity out of range");
  }
  if (kind == ModelKind::qce) {
    entity_trees[e].prepare_into(state, first_qubit, ctrl_mask, ctrl_value);
  } else {
    CircuitRun run;
    run.first_qubit = first_qubit;
    run.ctrl_mask = ctrl_mask;
    run.ctrl_value = ctrl_value;
    apply_circuit(entity_spec, entity_params[e], state, run);
  }
}

void QuantumModel::refresh_tree(std::size_t e) {
  if (kind != ModelKind::qce) {
    throw std::logic_error("refresh_tree: not a qce model");
  }
  const auto& vec = entity_vecs.at(e);
  auto& tree = entity_trees.at(e);
  for (std::size_t k = 0; k < vec.size(); ++k) tree.update(k, vec[k]);
}

void QuantumModel::check_triple(std::size_t s, std::size_t p,
                                std::size_t o) const {
  if (s >= n_entities() || o >= n_entities()) {
    throw std::out_of_range("triple references an unknown entity");
  }
  if (p >= n_predicates()) {
    throw std::out_of_range("triple references an unknown predicate");
  }
}

}  // namespace qkge
