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
#include "qkge/scoring/scoring.hpp"

#include <algorithm>
#include <stdexcept>

namespace qkge {

double eta_exact(const QuantumModel& model, std::size_t s, std::size_t p,
                 std::size_t o) {
  model.check_triple(s, p, o);
  StateVector sp = model.entity_state(s);
  apply_circuit(model.pred_spec, model.pred_params[p], sp);
  const StateVector obj = model.entity_state(o);
  return inner_product(obj, sp).real();
}

AncillaScore eta_via_ancilla(const QuantumModel& model, std::size_t s,
                             std::size_t p, std::size_t o) {
  model.check_triple(s, p, o);
  const int n = model.n_qubits;
  StateVector psi(n + 1);
  const std::uint64_t abit = psi.qubit_mask(1);
  const TwoByTwo h = hadamard_2x2();
  const TwoByTwo x = pauli_x_2x2();

  psi.apply_single(1, h);

  // Object branch, controlled on ancilla |0> via X conjugation.
  psi.apply_single(1, x);
  model.entity_state_into(o, psi, 2, abit, abit);
  psi.apply_single(1, x);

  // Subject preparation followed by the predicate circuit on ancilla |1>.
  model.entity_state_into(s, psi, 2, abit, abit);
  CircuitRun run;
  run.first_qubit = 2;
  run.ctrl_mask = abit;
  run.ctrl_value = abit;
  apply_circuit(model.pred_spec, model.pred_params[p], psi, run);

  psi.apply_single(1, h);

  AncillaScore score;
  score.p0 = psi.bit_probability(1, 0);
  score.p1 = psi.bit_probability(1, 1);
  score.eta = 2.0 * score.p0 - 1.0;
  return score;
}

ShotScore eta_shots(const QuantumModel& model, std::size_t s, std::size_t p,
                    std::size_t o, std::uint64_t n_shots, Rng& rng) {
  if (n_shots == 0) {
    throw std::invalid_argument("eta_shots: need at least one shot");
  }
  const AncillaScore exact = eta_via_ancilla(model, s, p, o);
  const double p0 = std::clamp(exact.p0, 0.0, 1.0);
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 0; i < n_shots; ++i) {
    if (rng.uniform() < p0) ++zeros;
  }
  ShotScore out;
  out.eta = 2.0 * static_cast<double>(zeros) / static_cast<double>(n_shots) - 1.0;
  out.shots = n_shots;
  return out;
}

}  // namespace qkge
