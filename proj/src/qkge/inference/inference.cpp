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

#include "qkge/inference/inference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qkge/circuits/circuit.hpp"
#include "qkge/qsim/gates.hpp"
#include "qkge/qsim/kernels.hpp"
#include "qkge/qtree/amplitude_tree.hpp"
#include "qkge/util/csv.hpp"

namespace qkge {

namespace {

constexpr double kPi = 3.141592653589793;

int index_bits_for(std::size_t n_entities) {
  if (n_entities < 2) {
    throw std::invalid_argument("inference needs at least 2 entities");
  }
  return std::bit_width(n_entities - 1);
}

void check_register_size(int total_qubits) {
  if (total_qubits > kMaxInferenceQubits) {
    throw std::invalid_argument(
        "inference register of " + std::to_string(total_qubits) +
        " qubits exceeds the dense simulation cap of " +
        std::to_string(kMaxInferenceQubits) +
        " (2^24 amplitudes); reduce the entity count or rank");
  }
}

std::uint64_t ancilla_bit(const InferenceState& st) {
  return std::uint64_t{1} << (st.total_qubits() - 1);
}

}  // namespace

InferenceState build_inference_state(const QuantumModel& model,
                                     std::uint32_t s, std::uint32_t p) {
  const std::size_t n_e = model.n_entities();
  if (s >= n_e || p >= model.n_predicates()) {
    throw std::invalid_argument("build_inference_state: id out of range");
  }
  InferenceState st;
  st.index_bits = index_bits_for(n_e);
  st.rep_bits = model.n_qubits;
  st.n_entities = n_e;
  st.subject = s;
  st.predicate = p;
  check_register_size(st.total_qubits());

  StateVector psi(st.total_qubits());
  psi.apply_single(1, hadamard_2x2());

  // Uniform superposition over the first n_e index values on both ancilla
  // branches; the amplitude tree pads the rest with exact zeros.
  const AmplitudeTree index_tree =
      AmplitudeTree::build(std::vector<double>(n_e, 1.0));
  index_tree.prepare_into(psi, 2);

  const std::uint64_t a_bit = std::uint64_t{1} << (st.total_qubits() - 1);
  const std::uint64_t index_mask =
      ((std::uint64_t{1} << st.index_bits) - 1) << st.rep_bits;
  const int first_l = 2 + st.index_bits;

  // |e_i> on L conditioned on (A=0, I=i).
  for (std::size_t i = 0; i < n_e; ++i) {
    const std::uint64_t value = static_cast<std::uint64_t>(i) << st.rep_bits;
    model.entity_state_into(i, psi, first_l, a_bit | index_mask, value);
  }
  // |sp> on L conditioned on A=1, for every index value.
  model.entity_state_into(s, psi, first_l, a_bit, a_bit);
  CircuitRun pred_run;
  pred_run.first_qubit = first_l;
  pred_run.ctrl_mask = a_bit;
  pred_run.ctrl_value = a_bit;
  apply_circuit(model.pred_spec, model.pred_params[p], psi, pred_run);

  psi.apply_single(1, hadamard_2x2());

  st.psi0 = psi;
  st.psi = std::move(psi);
  return st;
}

InferenceState build_idealistic_state(
    std::size_t n_entities, const std::vector<std::uint8_t>& solutions,
    int rep_bits) {
  if (solutions.size() != n_entities) {
    throw std::invalid_argument("solution mask size must equal entity count");
  }
  if (rep_bits < 0) throw std::invalid_argument("negative rep_bits");
  const std::size_t h = static_cast<std::size_t>(
      std::count(solutions.begin(), solutions.end(), std::uint8_t{1}));
  if (h == 0) {
    throw std::invalid_argument("idealistic mode needs at least one solution");
  }
  InferenceState st;
  st.index_bits = index_bits_for(n_entities);
  st.rep_bits = rep_bits;
  st.n_entities = n_entities;
  st.idealistic = true;
  st.solutions = solutions;
  check_register_size(st.total_qubits());

  // Good mass H/(2 N_e) on |0>_A |i in solutions> |0>_L; the rest uniform
  // over |1>_A |i < N_e> |0>_L.
  StateVector psi(st.total_qubits());
  psi.amplitudes()[0] = 0.0;
  const double n_e = static_cast<double>(n_entities);
  const double good = 1.0 / std::sqrt(2.0 * n_e);
  const double bad =
      std::sqrt((1.0 - static_cast<double>(h) / (2.0 * n_e)) / n_e);
  const std::uint64_t a_bit = std::uint64_t{1} << (st.total_qubits() - 1);
  auto amps = psi.amplitudes();
  for (std::size_t i = 0; i < n_entities; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) << rep_bits;
    if (solutions[i]) amps[base] = good;
    amps[a_bit | base] = bad;
  }
  st.psi0 = psi;
  st.psi = std::move(psi);
  return st;
}

std::uint32_t iteration_count(std::size_t n_entities, std::size_t h) {
  if (n_entities == 0 || h == 0) {
    throw std::invalid_argument("iteration_count: empty domain");
  }
  if (h > 2 * n_entities) return 0;
  const double ratio =
      2.0 * static_cast<double>(n_entities) / static_cast<double>(h);
  return static_cast<std::uint32_t>(std::floor(kPi / 4.0 * std::sqrt(ratio)));
}

double idealistic_success_probability(std::size_t n_entities, std::size_t h,
                                      std::uint32_t iterations) {
  const double theta0 = std::asin(std::sqrt(
      static_cast<double>(h) / (2.0 * static_cast<double>(n_entities))));
  const double s = std::sin((2.0 * iterations + 1.0) * theta0);
  return s * s;
}

void amplify(InferenceState& state, std::uint32_t iterations) {
  if (state.psi.dim() != state.psi0.dim()) {
    throw std::invalid_argument("amplify: state not initialized");
  }
  const std::uint64_t a_bit = ancilla_bit(state);
  auto amps = state.psi.amplitudes();
  const auto& k = kernels::table();
  for (std::uint32_t it = 0; it < iterations; ++it) {
    // S_chi: negate the ancilla-0 half (the lower half of the register).
    for (std::uint64_t b = 0; b < a_bit; ++b) amps[b] = -amps[b];
    // Reflection about psi0: psi <- 2 <psi0|psi> psi0 - psi.
    const cplx overlap =
        k.inner_product(state.psi0.data(), state.psi.data(), state.psi.dim());
    const auto ref = state.psi0.amplitudes();
    for (std::size_t b = 0; b < amps.size(); ++b) {
      amps[b] = 2.0 * overlap * ref[b] - amps[b];
    }
  }
}

std::vector<double> index_probabilities(const InferenceState& state,
                                        int ancilla) {
  if (ancilla != 0 && ancilla != 1) {
    throw std::invalid_argument("ancilla must be 0 or 1");
  }
  const std::uint64_t a_bit = ancilla_bit(state);
  const std::uint64_t rep_dim = std::uint64_t{1} << state.rep_bits;
  const auto amps = state.psi.amplitudes();
  std::vector<double> probs(state.n_entities, 0.0);
  for (std::size_t i = 0; i < state.n_entities; ++i) {
    const std::uint64_t base =
        (ancilla ? a_bit : 0) | (static_cast<std::uint64_t>(i) << state.rep_bits);
    double acc = 0.0;
    for (std::uint64_t l = 0; l < rep_dim; ++l) {
      acc += std::norm(amps[base + l]);
    }
    probs[i] = acc;
  }
  return probs;
}

InferenceReport sample_candidates(const InferenceState& state,
                                  std::uint64_t shots, Rng& rng,
                                  std::size_t top_k) {
  if (shots == 0) throw std::invalid_argument("sample_candidates: zero shots");
  InferenceReport rep;
  rep.n_entities = state.n_entities;
  rep.shots = shots;
  rep.tallies.assign(state.n_entities, 0);

  // Joint (ancilla, index) distribution; measurement ignores L.
  const std::vector<double> p0 = index_probabilities(state, 0);
  const std::vector<double> p1 = index_probabilities(state, 1);
  std::vector<double> cdf(2 * state.n_entities);
  double acc = 0.0;
  for (std::size_t i = 0; i < state.n_entities; ++i) {
    acc += p0[i];
    cdf[i] = acc;
  }
  for (std::size_t i = 0; i < state.n_entities; ++i) {
    acc += p1[i];
    cdf[state.n_entities + i] = acc;
  }
  // acc == 1 up to rounding; draws beyond it count as ancilla-1 outcomes.
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t outcome =
        std::min<std::size_t>(cdf.size() - 1,
                              static_cast<std::size_t>(it - cdf.begin()));
    if (outcome < state.n_entities) {
      ++rep.tallies[outcome];
      ++rep.post_selected;
    }
  }

  std::vector<std::uint32_t> order(state.n_entities);
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return rep.tallies[a] > rep.tallies[b];
                   });
  const std::size_t k = std::min(top_k, order.size());
  rep.top.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    rep.top.emplace_back(order[i], rep.tallies[order[i]]);
  }
  return rep;
}

InferenceReport run_inference(InferenceState& state, std::uint32_t iterations,
                              std::uint64_t shots, Rng& rng,
                              std::size_t top_k) {
  const std::vector<double> before = index_probabilities(state, 0);
  double p0 = 0.0;
  for (double x : before) p0 += x;
  double p1 = 0.0;
  for (double x : index_probabilities(state, 1)) p1 += x;

  amplify(state, iterations);

  InferenceReport rep = sample_candidates(state, shots, rng, top_k);
  rep.iterations = iterations;
  rep.p0_initial = p0;
  rep.p1_initial = p1;
  rep.p0_index_initial = before;
  rep.p0_index_amplified = index_probabilities(state, 0);
  rep.success_probability = 0.0;
  for (double x : rep.p0_index_amplified) rep.success_probability += x;
  return rep;
}

std::string inference_csv(const InferenceReport& report,
                          const std::vector<std::string>& entity_names) {
  std::string out =
      "index,entity,probability,amplified_probability,sample_frequency\n";
  for (std::size_t i = 0; i < report.n_entities; ++i) {
    out += std::to_string(i) + ",";
    if (i < entity_names.size()) out += entity_names[i];
    out += "," + format_double(report.p0_index_initial[i]) + "," +
           format_double(report.p0_index_amplified[i]) + ",";
    const double freq =
        report.post_selected
            ? static_cast<double>(report.tallies[i]) /
                  static_cast<double>(report.post_selected)
            : 0.0;
    out += format_double(freq) + "\n";
  }
  return out;
}

}  // namespace qkge
