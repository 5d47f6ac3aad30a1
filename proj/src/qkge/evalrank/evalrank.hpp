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

// Filtered ranking evaluation: filtered mean rank and Hits@k over both
// retrieval directions, plus the empirical score histogram export.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qkge/baselines/baselines.hpp"
#include "qkge/kgdata/kgdata.hpp"
#include "qkge/model/quantum_model.hpp"

namespace qkge {

// Batched candidate scoring over one side of a triple.  Implementations are
// immutable after construction so evaluation can fan out across threads.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::size_t n_entities() const = 0;
  // Writes eta for every candidate entity substituted on `side`; out.size()
  // must equal n_entities().
  virtual void sweep(const Triple& t, CorruptSide side,
                     std::span<double> out) const = 0;
  virtual double score(const Triple& t) const = 0;
};

// Quantum scorer with all entity states cached at construction; a sweep is
// one predicate-circuit run plus one inner product per candidate.
class QuantumScorer final : public Scorer {
 public:
  explicit QuantumScorer(const QuantumModel& model);
  std::size_t n_entities() const override { return n_entities_; }
  void sweep(const Triple& t, CorruptSide side,
             std::span<double> out) const override;
  double score(const Triple& t) const override;

 private:
  const QuantumModel* model_;
  std::size_t n_entities_;
  std::size_t dim_;
  std::vector<cplx> entity_states_;  // row-major n_entities x dim
};

class ClassicalScorer final : public Scorer {
 public:
  explicit ClassicalScorer(const ClassicalModel& model) : model_(&model) {}
  std::size_t n_entities() const override { return model_->n_entities; }
  void sweep(const Triple& t, CorruptSide side,
             std::span<double> out) const override;
  double score(const Triple& t) const override;

 private:
  const ClassicalModel* model_;
};

std::unique_ptr<Scorer> make_quantum_scorer(const QuantumModel& model);
std::unique_ptr<Scorer> make_classical_scorer(const ClassicalModel& model);

struct RankOptions {
  bool filtered = true;
  // Optimistic rank by default: 1 + |{strictly greater}|.  The pessimistic
  // variant also counts ties.
  bool pessimistic = false;
};

// Rank of the triple's own entity on `side` among all candidates, with
// candidates forming observed positives other than the target removed when
// filtering is on.
std::uint32_t filtered_rank(const Scorer& scorer, const KnowledgeGraph& kg,
                            const Triple& t, CorruptSide side,
                            const RankOptions& opts = {});

// Same, given a precomputed sweep (avoids re-scoring).
std::uint32_t rank_from_scores(std::span<const double> scores,
                               const KnowledgeGraph& kg, const Triple& t,
                               CorruptSide side, const RankOptions& opts = {});

struct DirectionMetrics {
  double mr = 0.0;
  double hits3 = 0.0;   // fraction in [0, 1]
  double hits10 = 0.0;  // fraction in [0, 1]
};

struct RankResult {
  std::vector<std::uint32_t> object_ranks;
  std::vector<std::uint32_t> subject_ranks;
  DirectionMetrics object;
  DirectionMetrics subject;
  DirectionMetrics combined;
};

struct EvalOptions {
  std::uint32_t threads = 1;
  bool pessimistic = false;
};

// Filtered MR / Hits@3 / Hits@10 over both directions of every triple in
// the split.  Deterministic for any thread count.
RankResult evaluate(const Scorer& scorer, const KnowledgeGraph& kg,
                    Split split, const EvalOptions& opts = {});

struct EtaHistogram {
  std::vector<double> edges;        // bins + 1 values spanning [-1, 1]
  std::vector<std::uint64_t> counts;  // bins values
};

// Accumulates eta over all candidate substitutions of every split triple in
// both directions.  Scores outside [-1, 1] clamp into the end bins.
EtaHistogram eta_histogram(const Scorer& scorer, const KnowledgeGraph& kg,
                           Split split, std::uint32_t bins,
                           std::uint32_t threads = 1);

// CSV renderers.  Hits columns are percentages to match reporting style.
std::string metrics_csv(const std::string& dataset, const std::string& model,
                        const RankResult& result);
std::string histogram_csv(const EtaHistogram& hist);

}  // namespace qkge
