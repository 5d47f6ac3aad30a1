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

#include "qkge/model/quantum_model.hpp"
#include "qkge/util/rng.hpp"

namespace qkge {

// Value function of a triple: eta = Re <o | U_p | s> in [-1, 1].
double eta_exact(const QuantumModel& model, std::size_t s, std::size_t p,
                 std::size_t o);

// Interference readout on one ancilla: H on the ancilla, object preparation
// controlled on ancilla |0>, subject preparation plus predicate circuit
// controlled on ancilla |1>, H again. Pr(ancilla = 0) = 1/2 + 1/2 eta.
struct AncillaScore {
  double p0 = 0.0;
  double p1 = 0.0;
  double eta = 0.0;  // 2 * p0 - 1
};

AncillaScore eta_via_ancilla(const QuantumModel& model, std::size_t s,
                             std::size_t p, std::size_t o);

// Finite-shot estimate: n_shots Bernoulli(p0) draws from the ancilla
// distribution, eta_hat = 2 * (zeros / n_shots) - 1. Standard error scales
// as 1/sqrt(n_shots).
struct ShotScore {
  double eta = 0.0;
  std::uint64_t shots = 0;
};

ShotScore eta_shots(const QuantumModel& model, std::size_t s, std::size_t p,
                    std::size_t o, std::uint64_t n_shots, Rng& rng);

}  // namespace qkge
