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

#include <utility>
#include <vector>

#include "qkge/model/quantum_model.hpp"

namespace qkge {

struct LossConfig {
  int kappa = 1;
};

// L = (1/m) sum (y_i - eta_i)^(2 kappa) over (eta, label) pairs; labels are
// +-1. Throws on an empty batch or kappa < 1.
double loss(const std::vector<std::pair<double, double>>& eta_and_label,
            const LossConfig& cfg);

// dL/d eta_i = (2 kappa / m) (eta_i - y_i)^(2 kappa - 1).
double loss_gradient_coefficient(double eta, double label, int kappa,
                                 std::size_t batch_size);

enum class GateParam { alpha, beta, gamma };

// Entrywise analytic derivative of gate_matrix with respect to one angle.
TwoByTwo gate_derivative(const EulerGate& g, GateParam which);

// Transient evaluation-time overlays (dropout masks, noise-perturbed
// parameters). Null members fall back to the model's own state.
struct TripleOverrides {
  const ParamStore* subj_params = nullptr;  // fqce
  const ParamStore* pred_params = nullptr;
  const ParamStore* obj_params = nullptr;   // fqce
  const AmplitudeTree* subj_tree = nullptr;  // qce
  const AmplitudeTree* obj_tree = nullptr;   // qce
  const std::vector<std::uint8_t>* subj_keep = nullptr;
  const std::vector<std::uint8_t>* pred_keep = nullptr;
  const std::vector<std::uint8_t>* obj_keep = nullptr;
};

// Partials of eta for one triple, aligned with ParamStore order: entry
// 3*i + t is slot i's angle t (alpha, beta, gamma). Dropped slots get 0.
struct EtaGradient {
  double eta = 0.0;
  std::vector<double> pred_gates;
  std::vector<double> subj_gates;  // fqce only
  std::vector<double> obj_gates;   // fqce only
  std::vector<double> subj_vec;    // qce only: d eta / d a_s = Re(U_p^+ |o>)
  std::vector<double> obj_vec;     // qce only: d eta / d a_o = Re(U_p |s>)
};

// Reusable scratch states so batched gradient evaluation never reallocates.
struct GradientWorkspace {
  std::vector<StateVector> pre_s, pre_p, pre_o;
  std::vector<StateVector> bra_s, bra_p, bra_o;
  std::vector<StateVector> tmp;
};

// Production gradient: prefix states and suffix bras are cached so each
// parameter costs one gate application and one inner product. Equal to
// eta_gradient_reference to rounding.
EtaGradient eta_gradient(const QuantumModel& model, std::size_t s,
                         std::size_t p, std::size_t o,
                         const TripleOverrides* overrides = nullptr,
                         GradientWorkspace* ws = nullptr);

// Literal transcription of the derivative-circuit definition: for every
// parameter the circuit is re-run with that slot's matrix replaced by its
// analytic derivative (control-0 subspace projected out for controlled
// slots). Used as the contract implementation in tests.
EtaGradient eta_gradient_reference(const QuantumModel& model, std::size_t s,
                                   std::size_t p, std::size_t o);

// QCE embedding gradients alone; eta is linear in the raw amplitude entries.
std::pair<std::vector<double>, std::vector<double>> eta_gradient_qce_embeddings(
    const QuantumModel& model, std::size_t s, std::size_t p, std::size_t o);

}  // namespace qkge
