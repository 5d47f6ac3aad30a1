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

#include <cstdint>
#include <vector>

#include "qkge/qsim/state_vector.hpp"

namespace qkge {

// One parameterized slot: a single-qubit gate on `target`, optionally
// conditioned on `control` (0 means uncontrolled).
struct GateSlot {
  int control = 0;
  int target = 0;
  bool is_controlled() const noexcept { return control != 0; }
};

// Fixed four-block layout. Block 1 places an uncontrolled gate on every
// qubit; blocks 2..4 place one controlled gate per target qubit with the
// control `d` positions behind the target on the qubit ring (d = 1, 2, 3,
// wrapped to d' = ((d-1) mod (n-1)) + 1 so control != target for small n).
// Slots are applied in list order.
struct CircuitSpec {
  int n_qubits = 0;
  bool hadamard_prelude = false;
  std::vector<GateSlot> slots;

  std::size_t slot_count() const noexcept { return slots.size(); }
  std::size_t param_count() const noexcept { return slots.size() * 3; }
};

// n_qubits >= 2. The prelude marks circuits applied to |0...0> behind a
// Hadamard layer (trainable entity circuits).
CircuitSpec build_spec(int n_qubits, bool with_hadamard_prelude);

// Euler angles for every slot of one circuit, tagged with the entity or
// predicate index that owns them.
struct ParamStore {
  std::int64_t owner = -1;
  std::vector<EulerGate> gates;
};

ParamStore make_zero_params(const CircuitSpec& spec, std::int64_t owner = -1);

// Options for one evaluation of a circuit.
//
// first_qubit embeds the circuit's wires at an offset inside a larger
// register; ctrl_mask/ctrl_value condition every elementary operation
// (prelude included) on bits outside the circuit's own wires. adjoint runs
// the inverse. keep_mask (dropout) skips slots whose entry is 0, exactly as
// if the slot were the identity. replace_slot >= 0 substitutes `replacement`
// for that slot's gate matrix; for a controlled slot the control-0 subspace
// is then projected out, which implements the slot's parameter derivative.
struct CircuitRun {
  int first_qubit = 1;
  std::uint64_t ctrl_mask = 0;
  std::uint64_t ctrl_value = 0;
  bool adjoint = false;
  const std::vector<std::uint8_t>* keep_mask = nullptr;
  int replace_slot = -1;
  TwoByTwo replacement{};
};

void apply_circuit(const CircuitSpec& spec, const ParamStore& params,
                   StateVector& state, const CircuitRun& run = {});

StateVector run_circuit(const CircuitSpec& spec, const ParamStore& params,
                        const StateVector& input);

// Entity state of a trainable circuit: spec.slots applied to H^(x)n |0...0>.
StateVector circuit_entity_state(const CircuitSpec& spec,
                                 const ParamStore& params);

}  // namespace qkge
