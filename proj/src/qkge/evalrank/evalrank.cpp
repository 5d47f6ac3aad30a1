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

#include "qkge/evalrank/evalrank.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qkge/circuits/circuit.hpp"
#include "qkge/qsim/kernels.hpp"
#include "qkge/util/csv.hpp"

namespace qkge {

namespace {

// Static partition of [0, n) into `threads` contiguous chunks; the worker
// writes into preassigned slots so the merge order never depends on timing.
void parallel_over(std::size_t n, std::uint32_t threads,
                   const std::function<void(std::size_t, std::size_t,
                                            std::uint32_t)>& body) {
  const std::uint32_t t =
      std::max<std::uint32_t>(1, std::min<std::uint32_t>(
                                     threads, static_cast<std::uint32_t>(n)));
  if (t == 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t chunk = (n + t - 1) / t;
  for (std::uint32_t w = 0; w < t; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] { body(lo, hi, w); });
  }
  for (auto& th : pool) th.join();
}

DirectionMetrics summarize(const std::vector<std::uint32_t>& ranks) {
  DirectionMetrics m;
  if (ranks.empty()) return m;
  double sum = 0.0;
  std::size_t h3 = 0, h10 = 0;
  for (std::uint32_t r : ranks) {
    sum += r;
    if (r <= 3) ++h3;
    if (r <= 10) ++h10;
  }
  const double n = static_cast<double>(ranks.size());
  m.mr = sum / n;
  m.hits3 = static_cast<double>(h3) / n;
  m.hits10 = static_cast<double>(h10) / n;
  return m;
}

}  // namespace

QuantumScorer::QuantumScorer(const QuantumModel& model)
    : model_(&model),
      n_entities_(model.n_entities()),
      dim_(model.rank()) {
  if (n_entities_ == 0) {
    throw std::invalid_argument("QuantumScorer: model has no entities");
  }
  entity_states_.resize(n_entities_ * dim_);
  for (std::size_t e = 0; e < n_entities_; ++e) {
    const StateVector st = model_->entity_state(e);
    std::copy(st.data(), st.data() + dim_, entity_states_.data() + e * dim_);
  }
}

void QuantumScorer::sweep(const Triple& t, CorruptSide side,
                          std::span<double> out) const {
  if (out.size() != n_entities_) {
    throw std::invalid_argument("sweep: output size mismatch");
  }
  model_->check_triple(t.s, t.p, t.o);
  // Object sweep ranks Re<o'|U_p|s>; subject sweep ranks Re<o|U_p|s'> =
  // Re<w|s'> with w = U_p^+ |o>.  Both reduce to Re<entity_row|x>.
  const bool object_side = side == CorruptSide::object;
  const std::size_t fixed = object_side ? t.s : t.o;
  StateVector x(model_->n_qubits);
  std::copy(entity_states_.data() + fixed * dim_,
            entity_states_.data() + (fixed + 1) * dim_, x.data());
  CircuitRun run;
  run.adjoint = !object_side;
  apply_circuit(model_->pred_spec, model_->pred_params[t.p], x, run);
  const auto& k = kernels::table();
  for (std::size_t e = 0; e < n_entities_; ++e) {
    out[e] =
        k.inner_product(entity_states_.data() + e * dim_, x.data(), dim_)
            .real();
  }
}

double QuantumScorer::score(const Triple& t) const {
  model_->check_triple(t.s, t.p, t.o);
  StateVector x(model_->n_qubits);
  std::copy(entity_states_.data() + t.s * dim_,
            entity_states_.data() + (t.s + 1) * dim_, x.data());
  apply_circuit(model_->pred_spec, model_->pred_params[t.p], x);
  return kernels::table()
      .inner_product(entity_states_.data() + t.o * dim_, x.data(), dim_)
      .real();
}

void ClassicalScorer::sweep(const Triple& t, CorruptSide side,
                            std::span<double> out) const {
  if (out.size() != model_->n_entities) {
    throw std::invalid_argument("sweep: output size mismatch");
  }
  const std::uint32_t fixed = side == CorruptSide::object ? t.s : t.o;
  const std::vector<double> w =
      score_sweep_weights(*model_, t.p, fixed, side);
  const std::size_t width = model_->entity_width();
  for (std::size_t e = 0; e < model_->n_entities; ++e) {
    const double* row = model_->entities.data() + e * width;
    double acc = 0.0;
    for (std::size_t i = 0; i < width; ++i) acc += w[i] * row[i];
    out[e] = acc;
  }
}

double ClassicalScorer::score(const Triple& t) const {
  return classical_value(*model_, t);
}

std::unique_ptr<Scorer> make_quantum_scorer(const QuantumModel& model) {
  return std::make_unique<QuantumScorer>(model);
}

std::unique_ptr<Scorer> make_classical_scorer(const ClassicalModel& model) {
  return std::make_unique<ClassicalScorer>(model);
}

std::uint32_t rank_from_scores(std::span<const double> scores,
                               const KnowledgeGraph& kg, const Triple& t,
                               CorruptSide side, const RankOptions& opts) {
  const bool object_side = side == CorruptSide::object;
  const std::uint32_t target = object_side ? t.o : t.s;
  const double target_score = scores[target];
  std::uint32_t above = 0;
  for (std::uint32_t c = 0; c < scores.size(); ++c) {
    if (c == target) continue;
    if (opts.filtered) {
      const Triple cand = object_side ? Triple{t.s, t.p, c}
                                      : Triple{c, t.p, t.o};
      if (kg.observed(cand.s, cand.p, cand.o)) continue;
    }
    if (scores[c] > target_score ||
        (opts.pessimistic && scores[c] == target_score)) {
      ++above;
    }
  }
  return 1 + above;
}

std::uint32_t filtered_rank(const Scorer& scorer, const KnowledgeGraph& kg,
                            const Triple& t, CorruptSide side,
                            const RankOptions& opts) {
  std::vector<double> scores(scorer.n_entities());
  scorer.sweep(t, side, scores);
  return rank_from_scores(scores, kg, t, side, opts);
}

RankResult evaluate(const Scorer& scorer, const KnowledgeGraph& kg,
                    Split split, const EvalOptions& opts) {
  const auto& triples = kg.triples(split);
  if (triples.empty()) {
    throw std::invalid_argument("evaluate: empty split");
  }
  RankResult res;
  res.object_ranks.assign(triples.size(), 0);
  res.subject_ranks.assign(triples.size(), 0);
  const RankOptions ropts{true, opts.pessimistic};
  parallel_over(
      triples.size(), opts.threads,
      [&](std::size_t lo, std::size_t hi, std::uint32_t) {
        std::vector<double> scores(scorer.n_entities());
        for (std::size_t i = lo; i < hi; ++i) {
          scorer.sweep(triples[i], CorruptSide::object, scores);
          res.object_ranks[i] =
              rank_from_scores(scores, kg, triples[i], CorruptSide::object,
                               ropts);
          scorer.sweep(triples[i], CorruptSide::subject, scores);
          res.subject_ranks[i] =
              rank_from_scores(scores, kg, triples[i], CorruptSide::subject,
                               ropts);
        }
      });
  res.object = summarize(res.object_ranks);
  res.subject = summarize(res.subject_ranks);
  std::vector<std::uint32_t> all;
  all.reserve(2 * triples.size());
  all.insert(all.end(), res.object_ranks.begin(), res.object_ranks.end());
  all.insert(all.end(), res.subject_ranks.begin(), res.subject_ranks.end());
  res.combined = summarize(all);
  return res;
}

EtaHistogram eta_histogram(const Scorer& scorer, const KnowledgeGraph& kg,
                           Split split, std::uint32_t bins,
                           std::uint32_t threads) {
  if (bins < 2) throw std::invalid_argument("eta_histogram: bins < 2");
  const auto& triples = kg.triples(split);
  if (triples.empty()) {
    throw std::invalid_argument("eta_histogram: empty split");
  }
  EtaHistogram hist;
  hist.edges.resize(bins + 1);
  for (std::uint32_t b = 0; b <= bins; ++b) {
    hist.edges[b] = -1.0 + 2.0 * static_cast<double>(b) / bins;
  }
  hist.edges.front() = -1.0;
  hist.edges.back() = 1.0;

  const std::uint32_t t = std::max<std::uint32_t>(1, threads);
  std::vector<std::vector<std::uint64_t>> partial(
      t, std::vector<std::uint64_t>(bins, 0));
  parallel_over(triples.size(), t,
                [&](std::size_t lo, std::size_t hi, std::uint32_t w) {
                  std::vector<double> scores(scorer.n_entities());
                  auto& counts = partial[w];
                  auto tally = [&](double eta) {
                    const double u = (eta + 1.0) * 0.5 * bins;
                    auto b = static_cast<std::int64_t>(std::floor(u));
                    b = std::clamp<std::int64_t>(b, 0, bins - 1);
                    ++counts[static_cast<std::size_t>(b)];
                  };
                  for (std::size_t i = lo; i < hi; ++i) {
                    scorer.sweep(triples[i], CorruptSide::object, scores);
                    for (double eta : scores) tally(eta);
                    scorer.sweep(triples[i], CorruptSide::subject, scores);
                    for (double eta : scores) tally(eta);
                  }
                });
  hist.counts.assign(bins, 0);
  for (const auto& counts : partial) {
    for (std::uint32_t b = 0; b < bins; ++b) hist.counts[b] += counts[b];
  }
  return hist;
}

std::string metrics_csv(const std::string& dataset, const std::string& model,
                        const RankResult& result) {
  std::string out = "dataset,model,direction,mr,hits3,hits10\n";
  const auto row = [&](const char* direction, const DirectionMetrics& m) {
    out += dataset + "," + model + "," + direction + "," +
           format_double(m.mr) + "," + format_double(100.0 * m.hits3) + "," +
           format_double(100.0 * m.hits10) + "\n";
  };
  row("object", result.object);
  row("subject", result.subject);
  row("combined", result.combined);
  return out;
}

std::string histogram_csv(const EtaHistogram& hist) {
  std::string out = "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    out += format_double(hist.edges[b]) + "," + format_double(hist.edges[b + 1]) +
           "," + std::to_string(hist.counts[b]) + "\n";
  }
  return out;
}

}  // namespace qkge
