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

// Stochastic-gradient training with early stopping, parameter
// initialization, and the two regularizers (gate dropout, parameter noise).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkge/baselines/baselines.hpp"
#include "qkge/circuits/circuit.hpp"
#include "qkge/kgdata/kgdata.hpp"
#include "qkge/model/quantum_model.hpp"
#include "qkge/util/rng.hpp"

namespace qkge {

struct TrainConfig {
  double learning_rate = 0.05;
  std::uint32_t batch_size = 256;
  std::uint32_t max_epochs = 1000;
  std::uint32_t eval_every = 20;
  std::uint32_t patience = 5;
  int kappa = 1;
  std::uint32_t negatives_per_positive = 2;
  double init_range = 0.3141592653589793;  // pi / 10
  double dropout = 0.0;
  double noise_mu = 0.0;
  // The noise scale N(0, |theta|) is read as standard deviation |theta| by
  // default; this flag switches to the variance reading (std = sqrt|theta|).
  bool noise_as_variance = false;
  ClassicalLoss classical_loss_kind = ClassicalLoss::mse;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

// Gate parameters ~ Uniform[-init_range, init_range]; QCE entity vectors
// standard normal then l2-normalized, with their amplitude trees built.
QuantumModel init_quantum_model(ModelKind kind, int n_qubits,
                                std::size_t n_entities,
                                std::size_t n_predicates,
                                const TrainConfig& cfg, Rng& init_rng);

// All tables Gaussian with sigma = 1 / sqrt(rank).
ClassicalModel init_classical_model(ModelKind kind, std::uint32_t rank,
                                    std::uint32_t n_entities,
                                    std::uint32_t n_predicates,
                                    const TrainConfig& cfg, Rng& init_rng);

// Per-slot keep mask: entry 0 with the given probability, independently.
std::vector<std::uint8_t> dropout_keep_mask(std::size_t n_slots,
                                            double probability, Rng& rng);

// Masked copy: dropped slots get angles (0,0,0), i.e. the identity gate.
ParamStore apply_dropout(const ParamStore& params,
                         const std::vector<std::uint8_t>& keep);

// theta' = theta + mu * N(0,1) * scale(theta), scale = |theta| by default
// or sqrt(|theta|) under the variance reading. theta = 0 stays 0.
ParamStore apply_noise(const ParamStore& params, double mu, bool as_variance,
                       Rng& rng);
std::vector<double> apply_noise_vector(const std::vector<double>& values,
                                       double mu, bool as_variance, Rng& rng);

// One pass over the training split. Gradients are taken at the
// dropout/noise-perturbed point and applied to the clean parameters after
// each batch; QCE embeddings are re-normalized and their trees refreshed.
// Returns the mean batch loss. Throws std::runtime_error on non-finite loss.
double train_epoch(QuantumModel& model, const KnowledgeGraph& kg,
                   const TrainConfig& cfg, RngPack& rngs);
double train_epoch(ClassicalModel& model, const KnowledgeGraph& kg,
                   const TrainConfig& cfg, RngPack& rngs);

struct TrainLogRow {
  std::uint32_t epoch = 0;
  double loss = 0.0;
  double valid_hits3 = -1.0;  // fraction; negative when not evaluated
  double wall_seconds = 0.0;
};

std::string train_log_csv(const std::vector<TrainLogRow>& rows);

struct FitResult {
  std::vector<TrainLogRow> log;
  std::uint32_t epochs_run = 0;
  std::uint32_t best_epoch = 0;
  double best_hits3 = -1.0;  // fraction; negative when never evaluated
};

// Runs up to max_epochs, evaluating filtered validation Hits@3 (both
// directions combined) every eval_every epochs; stops after `patience`
// non-improving evals and leaves the best-scoring parameters in `model`.
// Validation uses the clean parameters (no dropout/noise).
FitResult fit(QuantumModel& model, const KnowledgeGraph& kg,
              const TrainConfig& cfg, RngPack& rngs);
FitResult fit(ClassicalModel& model, const KnowledgeGraph& kg,
              const TrainConfig& cfg, RngPack& rngs);

}  // namespace qkge
