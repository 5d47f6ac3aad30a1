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

#include "qkge/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <utility>

#include "qkge/ckpt/checkpoint.hpp"
#include "qkge/evalrank/evalrank.hpp"
#include "qkge/inference/inference.hpp"
#include "qkge/kgdata/kgdata.hpp"
#include "qkge/model/quantum_model.hpp"
#include "qkge/util/csv.hpp"

namespace qkge {

namespace fs = std::filesystem;

namespace {

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

int data_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 1;
}

std::string artifact_path(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

std::string percent_or_na(double fraction) {
  if (fraction < 0.0) return "n/a";
  return format_double(fraction * 100.0);
}

// Test-time perturbation: predicates first, then entities, one noise draw
// per parameter in storage order.  QCE trees are rebuilt from the noisy
// vectors; state preparation renormalizes, so no explicit renorm is needed.
void perturb_quantum(QuantumModel& model, double mu, bool as_variance,
                     Rng& rng) {
  for (auto& params : model.pred_params) {
    params = apply_noise(params, mu, as_variance, rng);
  }
  if (model.kind == ModelKind::fqce) {
    for (auto& params : model.entity_params) {
      params = apply_noise(params, mu, as_variance, rng);
    }
  } else {
    for (std::size_t e = 0; e < model.entity_vecs.size(); ++e) {
      model.entity_vecs[e] =
          apply_noise_vector(model.entity_vecs[e], mu, as_variance, rng);
      model.refresh_tree(e);
    }
  }
}

bool vocab_matches(const KnowledgeGraph& kg, const CheckpointData& data) {
  return vocab_hash(kg.entity_names()) == data.entity_vocab_hash &&
         vocab_hash(kg.predicate_names()) == data.predicate_vocab_hash;
}

}  // namespace

std::string resolve_dataset(const std::string& spec) {
  if (spec.empty()) throw std::runtime_error("dataset argument is empty");
  if (spec.find('/') != std::string::npos || fs::exists(spec)) return spec;
  const char* root = std::getenv("QKGE_DATA_DIR");
  if (root != nullptr && *root != '\0') {
    fs::path candidate = fs::path(root) / spec;
    if (fs::exists(candidate)) return candidate.string();
    throw std::runtime_error("dataset '" + spec +
                             "' not found under QKGE_DATA_DIR=" + root);
  }
  throw std::runtime_error("dataset '" + spec +
                           "' is not a path and QKGE_DATA_DIR is not set");
}

static int cmd_train_impl(const TrainOptions& opts) {
  ModelKind kind;
  try {
    kind = model_kind_from_string(opts.model);
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  }
  TrainConfig cfg = opts.config;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  }
  if (!is_quantum(kind) && (cfg.dropout > 0.0 || cfg.noise_mu != 0.0)) {
    return usage_error("dropout and parameter noise apply to quantum models only");
  }
  if (is_quantum(kind) && (opts.n_qubits < 1 || opts.n_qubits > 20)) {
    return usage_error("--qubits must be in [1, 20]");
  }
  if (!is_quantum(kind) && opts.rank == 0) {
    return usage_error("--rank must be positive");
  }

  KnowledgeGraph kg =
      KnowledgeGraph::load(resolve_dataset(opts.dataset), cfg.seed);
  std::cout << kg.stats_line(opts.dataset) << "\n";

  RngPack rngs = RngPack::from_seed(cfg.seed);
  CheckpointData data;
  data.kind = kind;
  data.dataset = opts.dataset;
  data.n_entities = static_cast<std::uint32_t>(kg.n_entities());
  data.n_predicates = static_cast<std::uint32_t>(kg.n_predicates());
  data.entity_vocab_hash = vocab_hash(kg.entity_names());
  data.predicate_vocab_hash = vocab_hash(kg.predicate_names());
  data.config = cfg;

  FitResult fr;
  if (is_quantum(kind)) {
    QuantumModel model =
        init_quantum_model(kind, opts.n_qubits, kg.n_entities(),
                           kg.n_predicates(), cfg, rngs.init);
    fr = fit(model, kg, cfg, rngs);
    data.quantum = std::move(model);
  } else {
    ClassicalModel model = init_classical_model(
        kind, opts.rank, static_cast<std::uint32_t>(kg.n_entities()),
        static_cast<std::uint32_t>(kg.n_predicates()), cfg, rngs.init);
    fr = fit(model, kg, cfg, rngs);
    data.classical = std::move(model);
  }
  data.epochs_run = fr.epochs_run;
  data.best_epoch = fr.best_epoch;
  data.best_hits3 = fr.best_hits3;

  fs::create_directories(opts.out_dir);
  write_text_file(artifact_path(opts.out_dir, "train_log.csv"),
                  train_log_csv(fr.log));
  save_checkpoint(artifact_path(opts.out_dir, "checkpoint.qkge"), data);

  std::cout << "model=" << to_string(kind) << " epochs=" << fr.epochs_run
            << " best_epoch=" << fr.best_epoch
            << " best_valid_hits3=" << percent_or_na(fr.best_hits3) << "\n";
  std::cout << "wrote " << artifact_path(opts.out_dir, "checkpoint.qkge")
            << "\n";
  return 0;
}

static int cmd_eval_impl(const EvalCmdOptions& opts) {
  Split split;
  if (opts.split == "train") {
    split = Split::train;
  } else if (opts.split == "valid") {
    split = Split::valid;
  } else if (opts.split == "test") {
    split = Split::test;
  } else {
    return usage_error("--split must be train, valid, or test");
  }

  CheckpointData data = load_checkpoint(opts.checkpoint);
  if (opts.noise_mu != 0.0 && !is_quantum(data.kind)) {
    return usage_error("--noise applies to quantum checkpoints only");
  }

  KnowledgeGraph kg =
      KnowledgeGraph::load(resolve_dataset(opts.dataset), data.config.seed);
  if (!vocab_matches(kg, data)) {
    return data_error("dataset vocabulary does not match the checkpoint");
  }

  QuantumModel quantum;  // keeps the scored model alive past construction
  std::unique_ptr<Scorer> scorer;
  if (is_quantum(data.kind)) {
    quantum = std::move(data.quantum);
    if (opts.noise_mu != 0.0) {
      RngPack rngs = RngPack::from_seed(opts.seed);
      perturb_quantum(quantum, opts.noise_mu, opts.noise_as_variance,
                      rngs.noise);
    }
    scorer = make_quantum_scorer(quantum);
  } else {
    scorer = make_classical_scorer(data.classical);
  }

  EvalOptions eopts;
  eopts.threads = opts.threads;
  eopts.pessimistic = opts.pessimistic;
  RankResult result = evaluate(*scorer, kg, split, eopts);

  fs::create_directories(opts.out_dir);
  std::string csv = metrics_csv(opts.dataset, to_string(data.kind), result);
  write_text_file(artifact_path(opts.out_dir, "metrics.csv"), csv);
  std::cout << csv;
  if (opts.histogram_bins > 0) {
    EtaHistogram hist =
        eta_histogram(*scorer, kg, split, opts.histogram_bins, opts.threads);
    write_text_file(artifact_path(opts.out_dir, "histogram.csv"),
                    histogram_csv(hist));
  }
  return 0;
}

static int cmd_infer_impl(const InferOptions& opts) {
  if (opts.idealistic) {
    if (opts.solutions.empty()) {
      return usage_error("--idealistic requires at least one --solution");
    }
  } else {
    if (opts.checkpoint.empty()) {
      return usage_error("--checkpoint is required without --idealistic");
    }
    if (opts.subject.empty() || opts.predicate.empty()) {
      return usage_error("--subject and --predicate are required");
    }
  }

  CheckpointData data;
  const bool have_ckpt = !opts.checkpoint.empty();
  if (have_ckpt) data = load_checkpoint(opts.checkpoint);
  const std::uint64_t load_seed = have_ckpt ? data.config.seed : opts.seed;
  KnowledgeGraph kg =
      KnowledgeGraph::load(resolve_dataset(opts.dataset), load_seed);
  if (have_ckpt && !vocab_matches(kg, data)) {
    return data_error("dataset vocabulary does not match the checkpoint");
  }

  const std::size_t n_entities = kg.n_entities();
  InferenceState state;
  std::size_t h = 0;
  if (opts.idealistic) {
    std::vector<std::uint8_t> solutions(n_entities, 0);
    for (const std::string& name : opts.solutions) {
      auto id = kg.find_entity(name);
      if (!id) return data_error("unknown entity '" + name + "'");
      solutions[*id] = 1;
    }
    for (std::uint8_t flag : solutions) h += flag;
    state = build_idealistic_state(n_entities, solutions, 0);
  } else {
    if (!is_quantum(data.kind)) {
      return usage_error("inference requires a quantum checkpoint");
    }
    auto s = kg.find_entity(opts.subject);
    if (!s) return data_error("unknown entity '" + opts.subject + "'");
    auto p = kg.find_predicate(opts.predicate);
    if (!p) return data_error("unknown predicate '" + opts.predicate + "'");
    state = build_inference_state(data.quantum, *s, *p);
    for (std::uint32_t o = 0; o < n_entities; ++o) {
      if (kg.observed(*s, *p, o)) ++h;
    }
    if (h == 0) h = 1;  // amplification target when nothing is observed
  }

  const std::uint32_t iterations =
      opts.iterations >= 0 ? static_cast<std::uint32_t>(opts.iterations)
                           : iteration_count(n_entities, h);
  RngPack rngs = RngPack::from_seed(opts.seed);
  InferenceReport report =
      run_inference(state, iterations, opts.shots, rngs.shots, opts.top_k);

  fs::create_directories(opts.out_dir);
  write_text_file(artifact_path(opts.out_dir, "inference.csv"),
                  inference_csv(report, kg.entity_names()));

  std::cout << "entities=" << n_entities << " h=" << h
            << " iterations=" << report.iterations << "\n";
  std::cout << "Pr[ancilla=0] initial=" << format_double(report.p0_initial)
            << " amplified=" << format_double(report.success_probability)
            << "\n";
  if (opts.idealistic) {
    std::cout << "closed-form success="
              << format_double(idealistic_success_probability(
                     n_entities, h, report.iterations))
              << "\n";
  }
  std::cout << "post-selected " << report.post_selected << " / "
            << report.shots << " shots\n";
  for (const auto& [index, count] : report.top) {
    std::cout << "  " << kg.entity_name(index) << " count=" << count
              << " p_amplified="
              << format_double(report.p0_index_amplified[index]) << "\n";
  }
  return 0;
}

static int cmd_export_embeddings_impl(const ExportOptions& opts) {
  CheckpointData data = load_checkpoint(opts.checkpoint);

  std::vector<std::string> names;
  if (!opts.dataset.empty()) {
    KnowledgeGraph kg =
        KnowledgeGraph::load(resolve_dataset(opts.dataset), data.config.seed);
    if (!vocab_matches(kg, data)) {
      return data_error("dataset vocabulary does not match the checkpoint");
    }
    names = kg.entity_names();
  }

  const std::size_t n = data.n_entities;
  std::size_t width = 0;
  if (data.kind == ModelKind::qce) {
    width = data.quantum.rank();
  } else if (data.kind == ModelKind::fqce) {
    width = 2 * data.quantum.rank();
  } else {
    width = data.classical.entity_width();
  }

  std::string csv = "index,entity";
  for (std::size_t c = 0; c < width; ++c) {
    csv += ",c" + std::to_string(c);
  }
  csv += "\n";
  std::vector<double> row(width, 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    if (data.kind == ModelKind::qce) {
      const auto& vec = data.quantum.entity_vecs[e];
      std::copy(vec.begin(), vec.end(), row.begin());
    } else if (data.kind == ModelKind::fqce) {
      StateVector st = data.quantum.entity_state(e);
      for (std::size_t k = 0; k < st.amplitudes().size(); ++k) {
        row[2 * k] = st.amplitudes()[k].real();
        row[2 * k + 1] = st.amplitudes()[k].imag();
      }
    } else {
      auto span = data.classical.entity_row(static_cast<std::uint32_t>(e));
      std::copy(span.begin(), span.end(), row.begin());
    }
    csv += std::to_string(e);
    csv += ',';
    if (e < names.size()) csv += names[e];
    for (double v : row) {
      csv += ',';
      csv += format_double(v);
    }
    csv += '\n';
  }

  fs::create_directories(opts.out_dir);
  write_text_file(artifact_path(opts.out_dir, "embeddings.csv"), csv);
  std::cout << "wrote " << n << " embeddings of width " << width << " to "
            << artifact_path(opts.out_dir, "embeddings.csv") << "\n";
  return 0;
}

// Option mistakes return 2 from the bodies above; anything thrown past them
// (missing files, malformed data, I/O failures) is a data error.
int cmd_train(const TrainOptions& opts) {
  try {
    return cmd_train_impl(opts);
  } catch (const std::exception& e) {
    return data_error(e.what());
  }
}

int cmd_eval(const EvalCmdOptions& opts) {
  try {
    return cmd_eval_impl(opts);
  } catch (const std::exception& e) {
    return data_error(e.what());
  }
}

int cmd_infer(const InferOptions& opts) {
  try {
    return cmd_infer_impl(opts);
  } catch (const std::exception& e) {
    return data_error(e.what());
  }
}

int cmd_export_embeddings(const ExportOptions& opts) {
  try {
    return cmd_export_embeddings_impl(opts);
  } catch (const std::exception& e) {
    return data_error(e.what());
  }
}

}  // namespace qkge
