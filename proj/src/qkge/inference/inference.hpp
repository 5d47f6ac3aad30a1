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

// Accelerated-inference simulation: joint ancilla/index/representation
// state, post-selection probabilities, amplitude amplification over the
// ancilla-|0> subspace, and index-register sampling.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkge/model/quantum_model.hpp"
#include "qkge/qsim/state_vector.hpp"
#include "qkge/util/rng.hpp"

namespace qkge {

// Register layout, most significant first: 1 ancilla qubit A, then
// ceil(log2 N_e) index qubits I, then the representation qubits L.  Index
// values >= N_e carry zero amplitude by construction.
struct InferenceState {
  int index_bits = 0;
  int rep_bits = 0;
  std::size_t n_entities = 0;
  std::uint32_t subject = 0;
  std::uint32_t predicate = 0;
  bool idealistic = false;
  std::vector<std::uint8_t> solutions;  // idealistic only, size n_entities
  StateVector psi{1};   // placeholder until a builder fills it
  StateVector psi0{1};  // initial prepared state, the reflection axis

  int total_qubits() const noexcept { return 1 + index_bits + rep_bits; }
};

// Dense simulation cap: 2 * 2^{index_bits} * 2^{rep_bits} amplitudes.
inline constexpr int kMaxInferenceQubits = 24;

// Simulates the circuit construction: Hadamard on A, uniform index
// superposition, entity preparations conditioned on (A=0, I=i), subject
// preparation and predicate circuit conditioned on A=1, Hadamard on A.
// Afterwards Pr(|0>_A |i>_I) = (1 + eta_sp_ei) / (2 N_e).
InferenceState build_inference_state(const QuantumModel& model,
                                     std::uint32_t s, std::uint32_t p);

// Idealistic analysis state, bypassing any model: solution indices carry
// amplitude 1/sqrt(2 N_e) in the ancilla-0 branch (the good subspace mass
// is exactly H / (2 N_e)); the remaining mass is uniform over the ancilla-1
// branch.  Wrong-index ancilla-0 amplitudes are exactly zero.
InferenceState build_idealistic_state(std::size_t n_entities,
                                      const std::vector<std::uint8_t>& solutions,
                                      int rep_bits);

// floor((pi/4) sqrt(2 N_e / H)); 0 when H > 2 N_e.
std::uint32_t iteration_count(std::size_t n_entities, std::size_t h);

// Closed-form success probability sin^2((2m+1) theta_0) with
// theta_0 = arcsin sqrt(H / (2 N_e)), valid for the idealistic state.
double idealistic_success_probability(std::size_t n_entities, std::size_t h,
                                      std::uint32_t iterations);

// Applies `iterations` rounds of Q = (2|psi0><psi0| - I) S_chi, where S_chi
// negates every ancilla-0 amplitude.  Exact dense simulation.
void amplify(InferenceState& state, std::uint32_t iterations);

// Pr(ancilla = a, index = i) of the current state for i < n_entities.
std::vector<double> index_probabilities(const InferenceState& state,
                                        int ancilla);

struct InferenceReport {
  std::size_t n_entities = 0;
  std::uint32_t iterations = 0;
  double p0_initial = 0.0;   // marginal Pr(|0>_A) before amplification
  double p1_initial = 0.0;
  double success_probability = 0.0;  // Pr(|0>_A) after amplification
  std::vector<double> p0_index_initial;
  std::vector<double> p0_index_amplified;
  std::uint64_t shots = 0;
  std::uint64_t post_selected = 0;  // shots that measured ancilla |0>
  std::vector<std::uint64_t> tallies;  // post-selected counts per index
  std::vector<std::pair<std::uint32_t, std::uint64_t>> top;  // index, count
};

// Measures (A, I) `shots` times, discards ancilla-1 outcomes, tallies index
// frequencies of the rest.  Zero post-selected shots is reported, not fatal.
InferenceReport sample_candidates(const InferenceState& state,
                                  std::uint64_t shots, Rng& rng,
                                  std::size_t top_k = 10);

// Amplifies in place, then samples; fills the pre/post bookkeeping fields.
InferenceReport run_inference(InferenceState& state, std::uint32_t iterations,
                              std::uint64_t shots, Rng& rng,
                              std::size_t top_k = 10);

// CSV: index, entity name, probability, post-amplification probability,
// sample frequency.  Names may be empty (column left blank).
std::string inference_csv(const InferenceReport& report,
                          const std::vector<std::string>& entity_names);

}  // namespace qkge
