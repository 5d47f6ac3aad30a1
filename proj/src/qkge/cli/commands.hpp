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

// Command implementations behind the qkge binary.  Options structs mirror
// the CLI flags; each command returns a process exit code: 0 on success,
// 1 on data or I/O errors, 2 on invalid option combinations.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkge/training/training.hpp"

namespace qkge {

// Resolves a dataset argument: anything containing a path separator or
// naming an existing file or directory is used as-is, otherwise the name is
// looked up under $QKGE_DATA_DIR.  Throws std::runtime_error when neither
// applies.
std::string resolve_dataset(const std::string& spec);

// Artifacts land in out_dir under fixed names: checkpoint.qkge,
// train_log.csv, metrics.csv, histogram.csv, inference.csv, embeddings.csv.

struct TrainOptions {
  std::string model = "fqce";
  std::string dataset;
  std::string out_dir = ".";
  int n_qubits = 6;         // quantum models
  std::uint32_t rank = 64;  // classical models
  TrainConfig config;
};

struct EvalCmdOptions {
  std::string checkpoint;
  std::string dataset;
  std::string out_dir = ".";
  std::string split = "test";
  std::uint32_t histogram_bins = 0;  // 0 turns the histogram export off
  bool pessimistic = false;
  double noise_mu = 0.0;  // test-time perturbation, quantum checkpoints only
  bool noise_as_variance = false;
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;
};

struct InferOptions {
  std::string checkpoint;  // required unless idealistic
  std::string dataset;
  std::string out_dir = ".";
  std::string subject;
  std::string predicate;
  std::vector<std::string> solutions;  // idealistic target entities
  bool idealistic = false;
  std::int64_t iterations = -1;  // negative: floor((pi/4) sqrt(2 N_e / H))
  std::uint64_t shots = 100000;
  std::uint32_t top_k = 10;
  std::uint64_t seed = 0;
};

struct ExportOptions {
  std::string checkpoint;
  std::string dataset;  // optional, provides the entity-name column
  std::string out_dir = ".";
};

int cmd_train(const TrainOptions& opts);
int cmd_eval(const EvalCmdOptions& opts);
int cmd_infer(const InferOptions& opts);
int cmd_export_embeddings(const ExportOptions& opts);

}  // namespace qkge
