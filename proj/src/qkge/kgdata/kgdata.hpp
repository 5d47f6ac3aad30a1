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
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qkge/util/rng.hpp"

namespace qkge {

struct Triple {
  std::uint32_t s = 0;
  std::uint32_t p = 0;
  std::uint32_t o = 0;

  bool operator==(const Triple&) const = default;
};

enum class Split { train, valid, test };
enum class CorruptSide { subject, object };

// In-memory knowledge graph: integer-coded triples, name tables, and the
// deduplicated set of all observed positives (train + valid + test).
class KnowledgeGraph {
 public:
  // Directory with train.txt / valid.txt / test.txt (tab-separated
  // "subject<TAB>predicate<TAB>object" lines).
  static KnowledgeGraph load_split_dir(const std::string& dir);

  // Single triple file split 80/10/10 by a seeded shuffle.
  static KnowledgeGraph load_with_random_split(const std::string& file,
                                               std::uint64_t seed);

  // Picks the loader from the path shape: a directory containing train.txt
  // uses the canonical split; a file (or a directory with all.txt) gets the
  // seeded random split.
  static KnowledgeGraph load(const std::string& path, std::uint64_t seed);

  std::size_t n_entities() const noexcept { return entity_names_.size(); }
  std::size_t n_predicates() const noexcept { return predicate_names_.size(); }
  std::size_t n_triples() const noexcept;

  const std::vector<Triple>& triples(Split which) const;
  const std::string& entity_name(std::size_t id) const;
  const std::string& predicate_name(std::size_t id) const;
  const std::vector<std::string>& entity_names() const { return entity_names_; }
  const std::vector<std::string>& predicate_names() const {
    return predicate_names_;
  }

  bool observed(std::uint32_t s, std::uint32_t p, std::uint32_t o) const;

  // Name lookup; std::nullopt when the name is unknown.
  std::optional<std::uint32_t> find_entity(const std::string& name) const;
  std::optional<std::uint32_t> find_predicate(const std::string& name) const;

  // Average links per node: total triples / entities.
  double avg_links_per_node() const;

  // Single-line machine-readable summary.
  std::string stats_line(const std::string& name) const;

 private:
  std::uint64_t key(std::uint32_t s, std::uint32_t p, std::uint32_t o) const;
  std::uint32_t entity_id(const std::string& name);
  std::uint32_t predicate_id(const std::string& name);
  void ingest(const std::string& file, std::vector<Triple>& into);
  void index_observed();

  std::vector<std::string> entity_names_;
  std::vector<std::string> predicate_names_;
  std::unordered_map<std::string, std::uint32_t> entity_ids_;
  std::unordered_map<std::string, std::uint32_t> predicate_ids_;
  std::vector<Triple> train_, valid_, test_;
  std::unordered_set<std::uint64_t> observed_;
};

// Replaces one side with a uniform draw over all entities; a draw equal to
// the original is resampled exactly once (and kept either way). With
// `filtered` the draw is rejected while it reproduces an observed positive,
// up to a bounded number of retries.
Triple corrupt(const Triple& t, CorruptSide side, Rng& rng,
               const KnowledgeGraph& kg, bool filtered = false);

// One labeled training example; label is +1 or -1.
struct LabeledTriple {
  Triple t;
  double y = 1.0;
};

// Streams one epoch: a seeded shuffle of the training positives, each
// followed by negatives_per_positive corruptions alternating object side
// first. Batches hold batch_size samples (positives and negatives together);
// the last batch may be short.
class BatchIterator {
 public:
  BatchIterator(const KnowledgeGraph& kg, std::size_t batch_size,
                std::size_t negatives_per_positive, Rng& rng,
                bool filtered_negatives = false);

  // Fills `out`; returns false when the epoch is exhausted.
  bool next(std::vector<LabeledTriple>& out);

  std::size_t positives_per_batch() const noexcept { return positives_per_batch_; }

 private:
  const KnowledgeGraph& kg_;
  Rng& rng_;
  std::vector<std::uint32_t> order_;
  std::size_t cursor_ = 0;
  std::size_t positives_per_batch_;
  std::size_t negatives_per_positive_;
  bool filtered_;
};

}  // namespace qkge
