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

#include "qkge/training/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qkge/autodiff/autodiff.hpp"
#include "qkge/evalrank/evalrank.hpp"
#include "qkge/qtree/amplitude_tree.hpp"
#include "qkge/util/csv.hpp"

namespace qkge {

namespace {

double noise_scale(double theta, bool as_variance) {
  const double a = std::abs(theta);
  return as_variance ? std::sqrt(a) : a;
}

void check_finite_loss(double loss, std::size_t batch_index) {
  if (!std::isfinite(loss)) {
    throw std::runtime_error("train_epoch: non-finite loss " +
                             std::to_string(loss) + " in batch " +
                             std::to_string(batch_index));
  }
}

void sorted_unique(std::vector<std::uint32_t>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

// Sums coef * src into dst (dst sized on first use).
void accumulate(std::map<std::uint32_t, std::vector<double>>& table,
                std::uint32_t id, double coef, const std::vector<double>& src) {
  auto& dst = table[id];
  if (dst.empty()) dst.assign(src.size(), 0.0);
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += coef * src[i];
}

void sgd_step_gates(ParamStore& params, const std::vector<double>& grad,
                    double lr) {
  for (std::size_t i = 0; i < params.gates.size(); ++i) {
    params.gates[i].alpha -= lr * grad[3 * i];
    params.gates[i].beta -= lr * grad[3 * i + 1];
    params.gates[i].gamma -= lr * grad[3 * i + 2];
  }
}

template <typename Model, typename EpochFn, typename MakeScorer>
FitResult fit_impl(Model& model, const KnowledgeGraph& kg,
                   const TrainConfig& cfg, RngPack& rngs, EpochFn epoch_fn,
                   MakeScorer make_scorer) {
  cfg.validate();
  if (kg.triples(Split::valid).empty()) {
    throw std::invalid_argument("fit: empty validation split");
  }
  const auto start = std::chrono::steady_clock::now();
  FitResult res;
  Model best = model;
  std::uint32_t strikes = 0;
  bool stop = false;
  for (std::uint32_t epoch = 1; epoch <= cfg.max_epochs && !stop; ++epoch) {
    TrainLogRow row;
    row.epoch = epoch;
    row.loss = epoch_fn(model, rngs);
    res.epochs_run = epoch;
    if (epoch % cfg.eval_every == 0) {
      const auto scorer = make_scorer(model);
      EvalOptions eopts;
      eopts.threads = cfg.threads;
      const RankResult rr = evaluate(*scorer, kg, Split::valid, eopts);
      row.valid_hits3 = rr.combined.hits3;
      if (rr.combined.hits3 > res.best_hits3) {
        res.best_hits3 = rr.combined.hits3;
        res.best_epoch = epoch;
        best = model;
        strikes = 0;
      } else {
        ++strikes;
        if (strikes >= cfg.patience) stop = true;
      }
    }
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    res.log.push_back(row);
  }
  if (res.best_hits3 >= 0.0) {
    model = std::move(best);
  } else {
    res.best_epoch = res.epochs_run;
  }
  return res;
}

}  // namespace

void TrainConfig::validate() const {
  if (learning_rate <= 0.0) throw std::invalid_argument("learning rate <= 0");
  if (batch_size == 0) throw std::invalid_argument("batch size == 0");
  if (max_epochs == 0) throw std::invalid_argument("max epochs == 0");
  if (eval_every == 0) throw std::invalid_argument("eval-every == 0");
  if (patience == 0) throw std::invalid_argument("patience == 0");
  if (kappa < 1) throw std::invalid_argument("kappa < 1");
  if (init_range <= 0.0) throw std::invalid_argument("init range <= 0");
  if (dropout < 0.0 || dropout >= 1.0) {
    throw std::invalid_argument("dropout outside [0, 1)");
  }
  if (noise_mu < 0.0) throw std::invalid_argument("noise mu < 0");
  if (lambda < 0.0) throw std::invalid_argument("lambda < 0");
  if (threads == 0) throw std::invalid_argument("threads == 0");
}

QuantumModel init_quantum_model(ModelKind kind, int n_qubits,
                                std::size_t n_entities,
                                std::size_t n_predicates,
                                const TrainConfig& cfg, Rng& init_rng) {
  cfg.validate();
  if (!is_quantum(kind)) {
    throw std::invalid_argument("init_quantum_model: classical kind");
  }
  if (n_entities == 0 || n_predicates == 0) {
    throw std::invalid_argument("init_quantum_model: empty vocabulary");
  }
  QuantumModel m;
  m.kind = kind;
  m.n_qubits = n_qubits;
  m.pred_spec = build_spec(n_qubits, false);
  const auto init_gates = [&](ParamStore& p) {
    for (auto& g : p.gates) {
      g.alpha = init_rng.uniform(-cfg.init_range, cfg.init_range);
      g.beta = init_rng.uniform(-cfg.init_range, cfg.init_range);
      g.gamma = init_rng.uniform(-cfg.init_range, cfg.init_range);
    }
  };
  if (kind == ModelKind::fqce) {
    m.entity_spec = build_spec(n_qubits, true);
    m.entity_params.reserve(n_entities);
    for (std::size_t e = 0; e < n_entities; ++e) {
      m.entity_params.push_back(
          make_zero_params(m.entity_spec, static_cast<std::int64_t>(e)));
      init_gates(m.entity_params.back());
    }
  } else {
    const std::size_t rank = std::size_t{1} << n_qubits;
    m.entity_vecs.reserve(n_entities);
    m.entity_trees.reserve(n_entities);
    for (std::size_t e = 0; e < n_entities; ++e) {
      std::vector<double> v(rank);
      double norm_sq = 0.0;
      for (auto& x : v) {
        x = init_rng.normal();
        norm_sq += x * x;
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& x : v) x *= inv;
      m.entity_trees.push_back(AmplitudeTree::build(v));
      m.entity_vecs.push_back(std::move(v));
    }
  }
  m.pred_params.reserve(n_predicates);
  for (std::size_t p = 0; p < n_predicates; ++p) {
    m.pred_params.push_back(
        make_zero_params(m.pred_spec, static_cast<std::int64_t>(p)));
    init_gates(m.pred_params.back());
  }
  return m;
}

ClassicalModel init_classical_model(ModelKind kind, std::uint32_t rank,
                                    std::uint32_t n_entities,
                                    std::uint32_t n_predicates,
                                    const TrainConfig& cfg, Rng& init_rng) {
  cfg.validate();
  ClassicalModel m =
      make_classical_model(kind, n_entities, n_predicates, rank, cfg.lambda);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(rank));
  for (auto& x : m.entities) x = sigma * init_rng.normal();
  for (auto& x : m.predicates) x = sigma * init_rng.normal();
  for (auto& x : m.core) x = sigma * init_rng.normal();
  return m;
}

std::vector<std::uint8_t> dropout_keep_mask(std::size_t n_slots,
                                            double probability, Rng& rng) {
  if (probability < 0.0 || probability >= 1.0) {
    throw std::invalid_argument("dropout probability outside [0, 1)");
  }
  std::vector<std::uint8_t> keep(n_slots, 1);
  if (probability > 0.0) {
    for (auto& k : keep) k = rng.uniform() < probability ? 0 : 1;
  }
  return keep;
}

ParamStore apply_dropout(const ParamStore& params,
                         const std::vector<std::uint8_t>& keep) {
  if (keep.size() != params.gates.size()) {
    throw std::invalid_argument("apply_dropout: mask size mismatch");
  }
  ParamStore out = params;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (!keep[i]) out.gates[i] = EulerGate{};
  }
  return out;
}

ParamStore apply_noise(const ParamStore& params, double mu, bool as_variance,
                       Rng& rng) {
  if (mu < 0.0) throw std::invalid_argument("apply_noise: mu < 0");
  ParamStore out = params;
  if (mu == 0.0) return out;
  for (auto& g : out.gates) {
    g.alpha += mu * rng.normal() * noise_scale(g.alpha, as_variance);
    g.beta += mu * rng.normal() * noise_scale(g.beta, as_variance);
    g.gamma += mu * rng.normal() * noise_scale(g.gamma, as_variance);
  }
  return out;
}

std::vector<double> apply_noise_vector(const std::vector<double>& values,
                                       double mu, bool as_variance, Rng& rng) {
  if (mu < 0.0) throw std::invalid_argument("apply_noise: mu < 0");
  std::vector<double> out = values;
  if (mu == 0.0) return out;
  for (auto& x : out) x += mu * rng.normal() * noise_scale(x, as_variance);
  return out;
}

double train_epoch(QuantumModel& model, const KnowledgeGraph& kg,
                   const TrainConfig& cfg, RngPack& rngs) {
  cfg.validate();
  const bool fqce = model.kind == ModelKind::fqce;
  BatchIterator iter(kg, cfg.batch_size, cfg.negatives_per_positive,
                     rngs.sampling);
  std::vector<LabeledTriple> batch;
  GradientWorkspace ws;
  double loss_sum = 0.0;
  std::size_t n_batches = 0;

  while (iter.next(batch)) {
    // Owners touched by this batch, in a deterministic order.
    std::vector<std::uint32_t> preds, ents;
    preds.reserve(batch.size());
    ents.reserve(2 * batch.size());
    for (const auto& lt : batch) {
      preds.push_back(lt.t.p);
      ents.push_back(lt.t.s);
      ents.push_back(lt.t.o);
    }
    sorted_unique(preds);
    sorted_unique(ents);

    // Per-batch dropout masks, predicates first then entities.
    std::map<std::uint32_t, std::vector<std::uint8_t>> pred_keep, ent_keep;
    if (cfg.dropout > 0.0) {
      for (std::uint32_t p : preds) {
        pred_keep.emplace(p, dropout_keep_mask(model.pred_spec.slot_count(),
                                               cfg.dropout, rngs.dropout));
      }
      if (fqce) {
        for (std::uint32_t e : ents) {
          ent_keep.emplace(e,
                           dropout_keep_mask(model.entity_spec.slot_count(),
                                             cfg.dropout, rngs.dropout));
        }
      }
    }

    // Transient noise overlays; gradients are taken at the perturbed point
    // but applied to the clean parameters.
    std::map<std::uint32_t, ParamStore> pred_noisy, ent_noisy;
    std::map<std::uint32_t, AmplitudeTree> tree_noisy;
    if (cfg.noise_mu > 0.0) {
      for (std::uint32_t p : preds) {
        pred_noisy.emplace(p, apply_noise(model.pred_params[p], cfg.noise_mu,
                                          cfg.noise_as_variance, rngs.noise));
      }
      for (std::uint32_t e : ents) {
        if (fqce) {
          ent_noisy.emplace(e,
                            apply_noise(model.entity_params[e], cfg.noise_mu,
                                        cfg.noise_as_variance, rngs.noise));
        } else {
          const std::vector<double> v =
              apply_noise_vector(model.entity_vecs[e], cfg.noise_mu,
                                 cfg.noise_as_variance, rngs.noise);
          tree_noisy.emplace(e, AmplitudeTree::build(v));
        }
      }
    }

    std::map<std::uint32_t, std::vector<double>> grad_pred, grad_ent, grad_vec;
    std::vector<std::pair<double, double>> etas;
    etas.reserve(batch.size());
    for (const auto& lt : batch) {
      TripleOverrides ov;
      if (cfg.dropout > 0.0) {
        ov.pred_keep = &pred_keep.at(lt.t.p);
        if (fqce) {
          ov.subj_keep = &ent_keep.at(lt.t.s);
          ov.obj_keep = &ent_keep.at(lt.t.o);
        }
      }
      if (cfg.noise_mu > 0.0) {
        ov.pred_params = &pred_noisy.at(lt.t.p);
        if (fqce) {
          ov.subj_params = &ent_noisy.at(lt.t.s);
          ov.obj_params = &ent_noisy.at(lt.t.o);
        } else {
          ov.subj_tree = &tree_noisy.at(lt.t.s);
          ov.obj_tree = &tree_noisy.at(lt.t.o);
        }
      }
      const EtaGradient g =
          eta_gradient(model, lt.t.s, lt.t.p, lt.t.o, &ov, &ws);
      const double coef =
          loss_gradient_coefficient(g.eta, lt.y, cfg.kappa, batch.size());
      accumulate(grad_pred, lt.t.p, coef, g.pred_gates);
      if (fqce) {
        accumulate(grad_ent, lt.t.s, coef, g.subj_gates);
        accumulate(grad_ent, lt.t.o, coef, g.obj_gates);
      } else {
        accumulate(grad_vec, lt.t.s, coef, g.subj_vec);
        accumulate(grad_vec, lt.t.o, coef, g.obj_vec);
      }
      etas.emplace_back(g.eta, lt.y);
    }

    LossConfig lcfg;
    lcfg.kappa = cfg.kappa;
    const double batch_loss = loss(etas, lcfg);
    check_finite_loss(batch_loss, n_batches);
    loss_sum += batch_loss;
    ++n_batches;

    for (const auto& [p, g] : grad_pred) {
      sgd_step_gates(model.pred_params[p], g, cfg.learning_rate);
    }
    for (const auto& [e, g] : grad_ent) {
      sgd_step_gates(model.entity_params[e], g, cfg.learning_rate);
    }
    for (const auto& [e, g] : grad_vec) {
      auto& v = model.entity_vecs[e];
      double norm_sq = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] -= cfg.learning_rate * g[k];
        norm_sq += v[k] * v[k];
      }
      if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
        throw std::runtime_error(
            "train_epoch: degenerate embedding for entity " +
            std::to_string(e));
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& x : v) x *= inv;
      model.refresh_tree(e);
    }
  }
  if (n_batches == 0) {
    throw std::runtime_error("train_epoch: empty training split");
  }
  return loss_sum / static_cast<double>(n_batches);
}

double train_epoch(ClassicalModel& model, const KnowledgeGraph& kg,
                   const TrainConfig& cfg, RngPack& rngs) {
  cfg.validate();
  if (cfg.dropout > 0.0 || cfg.noise_mu > 0.0) {
    throw std::invalid_argument(
        "dropout and parameter noise apply to quantum models only");
  }
  BatchIterator iter(kg, cfg.batch_size, cfg.negatives_per_positive,
                     rngs.sampling);
  std::vector<LabeledTriple> batch;
  double loss_sum = 0.0;
  std::size_t n_batches = 0;
  while (iter.next(batch)) {
    const double batch_loss =
        classical_loss(model, batch, cfg.classical_loss_kind);
    check_finite_loss(batch_loss, n_batches);
    const ClassicalGradients g =
        classical_gradients(model, batch, cfg.classical_loss_kind);
    const double lr = cfg.learning_rate;
    for (std::size_t i = 0; i < model.entities.size(); ++i) {
      model.entities[i] -= lr * g.entities[i];
    }
    for (std::size_t i = 0; i < model.predicates.size(); ++i) {
      model.predicates[i] -= lr * g.predicates[i];
    }
    for (std::size_t i = 0; i < model.core.size(); ++i) {
      model.core[i] -= lr * g.core[i];
    }
    loss_sum += batch_loss;
    ++n_batches;
  }
  if (n_batches == 0) {
    throw std::runtime_error("train_epoch: empty training split");
  }
  return loss_sum / static_cast<double>(n_batches);
}

std::string train_log_csv(const std::vector<TrainLogRow>& rows) {
  std::string out = "epoch,loss,valid_hits3,wall_seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.epoch) + "," + format_double(r.loss) + ",";
    if (r.valid_hits3 >= 0.0) out += format_double(100.0 * r.valid_hits3);
    out += "," + format_double(r.wall_seconds) + "\n";
  }
  return out;
}

FitResult fit(QuantumModel& model, const KnowledgeGraph& kg,
              const TrainConfig& cfg, RngPack& rngs) {
  return fit_impl(
      model, kg, cfg, rngs,
      [&kg, &cfg](QuantumModel& m, RngPack& r) {
        return train_epoch(m, kg, cfg, r);
      },
      [](const QuantumModel& m) { return make_quantum_scorer(m); });
}

FitResult fit(ClassicalModel& model, const KnowledgeGraph& kg,
              const TrainConfig& cfg, RngPack& rngs) {
  return fit_impl(
      model, kg, cfg, rngs,
      [&kg, &cfg](ClassicalModel& m, RngPack& r) {
        return train_epoch(m, kg, cfg, r);
      },
      [](const ClassicalModel& m) { return make_classical_scorer(m); });
}

}  // namespace qkge
