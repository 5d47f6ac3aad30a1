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
#include "qkge/circuits/circuit.hpp"

#include <stdexcept>
#include <string>

namespace qkge {

CircuitSpec build_spec(int n_qubits, bool with_hadamard_prelude) {
  if (n_qubits < 2) {
    throw std::invalid_argument("build_spec: need at least 2 qubits, got " +
                                std::to_string(n_qubits));
  }
  CircuitSpec spec;
  spec.n_qubits = n_qubits;
  spec.hadamard_prelude = with_hadamard_prelude;
  spec.slots.reserve(static_cast<std::size_t>(4 * n_qubits));
  for (int target = 1; target <= n_qubits; ++target) {
    spec.slots.push_back(GateSlot{0, target});
  }
  for (int block = 1; block <= 3; ++block) {
    const int distance = (block - 1) % (n_qubits - 1) + 1;
    for (int target = 1; target <= n_qubits; ++target) {
      int control = target - distance;
      if (control < 1) control += n_qubits;
      spec.slots.push_back(GateSlot{control, target});
    }
  }
  return spec;
}

ParamStore make_zero_params(const CircuitSpec& spec, std::int64_t owner) {
  ParamStore p;
  p.owner = owner;
  p.gates.assign(spec.slot_count(), EulerGate{});
  return p;
}

namespace {

void apply_prelude(const CircuitSpec& spec, StateVector& state,
                   const CircuitRun& run) {
  const TwoByTwo h = hadamard_2x2();
  for (int q = 1; q <= spec.n_qubits; ++q) {
    state.apply_masked(run.first_qubit + q - 1, run.ctrl_mask, run.ctrl_value,
                       h);
  }
}

void apply_slot(const CircuitSpec& spec, const GateSlot& slot,
                const TwoByTwo& m, StateVector& state, const CircuitRun& run,
                bool derivative) {
  const int target = run.first_qubit + slot.target - 1;
  std::uint64_t mask = run.ctrl_mask;
  std::uint64_t value = run.ctrl_value;
  if (slot.is_controlled()) {
    const std::uint64_t cbit =
        state.qubit_mask(run.first_qubit + slot.control - 1);
    mask |= cbit;
    value |= cbit;
  }
  state.apply_masked(target, mask, value, m);
  if (derivative && slot.is_controlled()) {
    // d/dtheta (P0 (x) 1 + P1 (x) G) = P1 (x) dG: the control-0 subspace
    // contributes nothing and is projected out.
    state.project_qubit(run.first_qubit + slot.control - 1, 1);
  }
  (void)spec;
}

}  // namespace

void apply_circuit(const CircuitSpec& spec, const ParamStore& params,
                   StateVector& state, const CircuitRun& run) {
  if (params.gates.size() != spec.slot_count()) {
    throw std::invalid_argument(
        "apply_circuit: parameter store has " +
        std::to_string(params.gates.size()) + " gates, circuit has " +
        std::to_string(spec.slot_count()) + " slots");
  }
  if (run.first_qubit < 1 ||
      run.first_qubit + spec.n_qubits - 1 > state.n_qubits()) {
    throw std::out_of_range("apply_circuit: circuit wires exceed register");
  }
  if (run.keep_mask && run.keep_mask->size() != spec.slot_count()) {
    throw std::invalid_argument("apply_circuit: keep_mask size mismatch");
  }
  if (run.replace_slot >= static_cast<int>(spec.slot_count())) {
    throw std::out_of_range("apply_circuit: replace_slot out of range");
  }
  if (run.replace_slot >= 0 && run.adjoint) {
    throw std::invalid_argument(
        "apply_circuit: derivative slots cannot be combined with adjoint");
  }
  if (run.replace_slot >= 0 && run.ctrl_mask != 0) {
    // The control-0 projection below is register-wide and would clobber the
    // amplitudes an embedded, externally controlled run must leave alone.
    throw std::invalid_argument(
        "apply_circuit: derivative slots require an uncontrolled run");
  }

  if (spec.hadamard_prelude && !run.adjoint) apply_prelude(spec, state, run);

  const int n_slots = static_cast<int>(spec.slot_count());
  for (int step = 0; step < n_slots; ++step) {
    const int i = run.adjoint ? n_slots - 1 - step : step;
    if (run.keep_mask && (*run.keep_mask)[static_cast<std::size_t>(i)] == 0) {
      continue;
    }
    const bool derivative = (i == run.replace_slot);
    TwoByTwo m = derivative ? run.replacement
                            : gate_matrix(params.gates[static_cast<std::size_t>(i)]);
    if (run.adjoint) m = adjoint(m);
    apply_slot(spec, spec.slots[static_cast<std::size_t>(i)], m, state, run,
               derivative);
  }

  // (slots * H)^dagger = H * slots^dagger: the prelude comes last.
  if (spec.hadamard_prelude && run.adjoint) apply_prelude(spec, state, run);
}

StateVector run_circuit(const CircuitSpec& spec, const ParamStore& params,
                        const StateVector& input) {
  StateVector out = input;
  apply_circuit(spec, params, out);
  return out;
}

StateVector circuit_entity_state(const CircuitSpec& spec,
                                 const ParamStore& params) {
  StateVector state(spec.n_qubits);
  apply_circuit(spec, params, state);
  return state;
}

}  // namespace qkge
