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

// Model checkpoint container: a magic tag and version, a JSON header
// describing kind, shapes, vocab hashes, and training config, followed by
// little-endian float64 parameter blocks and a whole-file FNV-1a checksum.
// The payload carries no timestamps or paths, so identical runs produce
// bitwise-identical files.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkge/baselines/baselines.hpp"
#include "qkge/model/quantum_model.hpp"
#include "qkge/training/training.hpp"

namespace qkge {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointData {
  ModelKind kind = ModelKind::fqce;
  std::string dataset;
  std::uint32_t n_entities = 0;
  std::uint32_t n_predicates = 0;
  std::uint64_t entity_vocab_hash = 0;
  std::uint64_t predicate_vocab_hash = 0;
  TrainConfig config;
  // Metrics snapshot from fit().
  std::uint32_t epochs_run = 0;
  std::uint32_t best_epoch = 0;
  double best_hits3 = -1.0;
  // Exactly one of these is engaged, selected by kind.
  QuantumModel quantum;
  ClassicalModel classical;
};

// FNV-1a over the names joined with newlines; detects vocabulary drift
// between training and evaluation datasets.
std::uint64_t vocab_hash(const std::vector<std::string>& names);

// Throws std::runtime_error on I/O failure.
void save_checkpoint(const std::string& path, const CheckpointData& data);

// Throws std::runtime_error on missing file, bad magic, version mismatch,
// checksum mismatch, or malformed header; quantum circuit descriptors are
// validated against the canonical layout for their qubit count.
CheckpointData load_checkpoint(const std::string& path);

}  // namespace qkge
