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

// Classical bilinear scoring models used as baselines: a shared dense
// parameter layout plus exact score and gradient formulas for each kind.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qkge/kgdata/kgdata.hpp"
#include "qkge/model/quantum_model.hpp"

namespace qkge {

enum class ClassicalLoss {
  mse,
  logistic,
};

const char* to_string(ClassicalLoss loss);
ClassicalLoss classical_loss_from_string(const std::string& name);

// Dense parameter tables, row-major.  Row widths depend on the kind:
//   rescal            entities R          predicates R*R
//   distmult          entities R          predicates R
//   complex_bilinear  entities 2R         predicates 2R   (interleaved re,im)
//   tucker            entities R          predicates R    core R^3
// The Tucker core is indexed W[(i*R + j)*R + k] pairing s_i, p_j, o_k.
struct ClassicalModel {
  ModelKind kind = ModelKind::distmult;
  std::uint32_t n_entities = 0;
  std::uint32_t n_predicates = 0;
  std::uint32_t rank = 0;
  double lambda = 0.0;

  std::vector<double> entities;
  std::vector<double> predicates;
  std::vector<double> core;

  std::size_t entity_width() const;
  std::size_t predicate_width() const;
  std::size_t core_size() const;

  std::span<const double> entity_row(std::uint32_t e) const;
  std::span<const double> predicate_row(std::uint32_t p) const;
  std::span<double> entity_row(std::uint32_t e);
  std::span<double> predicate_row(std::uint32_t p);

  std::size_t parameter_count() const;
};

// Allocates zeroed tables with the kind-appropriate shapes.
ClassicalModel make_classical_model(ModelKind kind, std::uint32_t n_entities,
                                    std::uint32_t n_predicates,
                                    std::uint32_t rank, double lambda);

// Raw score eta for one triple, bilinear in the embeddings (unbounded).
double classical_value(const ClassicalModel& model, const Triple& t);

// Batch loss.  mse averages squared residuals over the batch; logistic sums
// log(1 + exp(-y eta)) without averaging.  Both add lambda * ||params||^2
// over every table exactly once.
double classical_loss(const ClassicalModel& model,
                      std::span<const LabeledTriple> batch,
                      ClassicalLoss which);

// Gradient tables shaped like the model's parameter tables.
struct ClassicalGradients {
  std::vector<double> entities;
  std::vector<double> predicates;
  std::vector<double> core;
};

// Exact batch gradient of classical_loss, including the regularizer term
// 2 * lambda * theta added elementwise to every parameter once per batch.
ClassicalGradients classical_gradients(
    const ClassicalModel& model, std::span<const LabeledTriple> batch,
    ClassicalLoss which);

// Weight vector for scoring every candidate entity on one side of a triple
// with the other side and the predicate fixed:
//   score(e) = dot(weights, entity_row(e))
// For complex_bilinear the interleaved layout makes the plain real dot
// product equal the complex formula.  `varying` names the side being swept;
// `fixed_entity` is the entity on the other side.
std::vector<double> score_sweep_weights(const ClassicalModel& model,
                                        std::uint32_t predicate,
                                        std::uint32_t fixed_entity,
                                        CorruptSide varying);

}  // namespace qkge
