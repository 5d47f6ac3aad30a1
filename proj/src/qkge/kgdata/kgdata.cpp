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
#include "qkge/kgdata/kgdata.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qkge/util/csv.hpp"

namespace qkge {

namespace {

constexpr std::uint32_t kIdBits = 20;  // entity and predicate ids < 2^20

std::vector<std::string> read_lines(const std::string& file) {
  std::ifstream f(file);
  if (!f) throw std::runtime_error("cannot open dataset file: " + file);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::uint64_t KnowledgeGraph::key(std::uint32_t s, std::uint32_t p,
                                  std::uint32_t o) const {
  return (static_cast<std::uint64_t>(s) << (2 * kIdBits)) |
         (static_cast<std::uint64_t>(p) << kIdBits) |
         static_cast<std::uint64_t>(o);
}

std::uint32_t KnowledgeGraph::entity_id(const std::string& name) {
  auto it = entity_ids_.find(name);
  if (it != entity_ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(entity_names_.size());
  if (id >= (1u << kIdBits)) {
    throw std::runtime_error("too many entities (limit 2^20)");
  }
  entity_ids_.emplace(name, id);
  entity_names_.push_back(name);
  return id;
}

std::uint32_t KnowledgeGraph::predicate_id(const std::string& name) {
  auto it = predicate_ids_.find(name);
  if (it != predicate_ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(predicate_names_.size());
  if (id >= (1u << kIdBits)) {
    throw std::runtime_error("too many predicates (limit 2^20)");
  }
  predicate_ids_.emplace(name, id);
  predicate_names_.push_back(name);
  return id;
}

void KnowledgeGraph::ingest(const std::string& file,
                            std::vector<Triple>& into) {
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(file)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty()) {
      throw std::runtime_error(file + ":" + std::to_string(line_no) +
                               ": expected subject<TAB>predicate<TAB>object");
    }
    Triple t;
    t.s = entity_id(fields[0]);
    t.p = predicate_id(fields[1]);
    t.o = entity_id(fields[2]);
    into.push_back(t);
  }
}

void KnowledgeGraph::index_observed() {
  // Duplicate lines collapse here and in the split lists (first one wins).
  observed_.reserve(train_.size() + valid_.size() + test_.size());
  for (auto* list : {&train_, &valid_, &test_}) {
    std::vector<Triple> unique;
    unique.reserve(list->size());
    for (const Triple& t : *list) {
      if (observed_.insert(key(t.s, t.p, t.o)).second) unique.push_back(t);
    }
    *list = std::move(unique);
  }
}

KnowledgeGraph KnowledgeGraph::load_split_dir(const std::string& dir) {
  KnowledgeGraph kg;
  kg.ingest(dir + "/train.txt", kg.train_);
  kg.ingest(dir + "/valid.txt", kg.valid_);
  kg.ingest(dir + "/test.txt", kg.test_);
  kg.index_observed();
  if (kg.train_.empty()) throw std::runtime_error(dir + ": empty training split");
  return kg;
}

KnowledgeGraph KnowledgeGraph::load_with_random_split(const std::string& file,
                                                      std::uint64_t seed) {
  KnowledgeGraph kg;
  std::vector<Triple> all;
  kg.ingest(file, all);
  if (all.size() < 3) {
    throw std::runtime_error(file + ": need at least 3 triples to split");
  }

  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(splitmix64(seed ^ 0x73706c6974ULL));  // independent split stream
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform_int(i + 1)]);
  }

  const std::size_t n_valid = std::max<std::size_t>(1, all.size() / 10);
  const std::size_t n_test = std::max<std::size_t>(1, all.size() / 10);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Triple& t = all[order[i]];
    if (i < n_valid) {
      kg.valid_.push_back(t);
    } else if (i < n_valid + n_test) {
      kg.test_.push_back(t);
    } else {
      kg.train_.push_back(t);
    }
  }
  kg.index_observed();
  return kg;
}

KnowledgeGraph KnowledgeGraph::load(const std::string& path,
                                    std::uint64_t seed) {
  namespace fs = std::filesystem;
  if (fs::is_directory(path)) {
    if (fs::exists(path + "/train.txt")) return load_split_dir(path);
    if (fs::exists(path + "/all.txt")) {
      return load_with_random_split(path + "/all.txt", seed);
    }
    throw std::runtime_error(path +
                             ": expected train.txt/valid.txt/test.txt or all.txt");
  }
  if (fs::exists(path)) return load_with_random_split(path, seed);
  throw std::runtime_error("dataset path does not exist: " + path);
}

std::size_t KnowledgeGraph::n_triples() const noexcept {
  return train_.size() + valid_.size() + test_.size();
}

const std::vector<Triple>& KnowledgeGraph::triples(Split which) const {
  switch (which) {
    case Split::train: return train_;
    case Split::valid: return valid_;
    case Split::test: return test_;
  }
  throw std::invalid_argument("triples: bad split");
}

const std::string& KnowledgeGraph::entity_name(std::size_t id) const {
  if (id >= entity_names_.size()) throw std::out_of_range("bad entity id");
  return entity_names_[id];
}

const std::string& KnowledgeGraph::predicate_name(std::size_t id) const {
  if (id >= predicate_names_.size()) throw std::out_of_range("bad predicate id");
  return predicate_names_[id];
}

bool KnowledgeGraph::observed(std::uint32_t s, std::uint32_t p,
                              std::uint32_t o) const {
  return observed_.contains(key(s, p, o));
}

std::optional<std::uint32_t> KnowledgeGraph::find_entity(
    const std::string& name) const {
  auto it = entity_ids_.find(name);
  if (it == entity_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> KnowledgeGraph::find_predicate(
    const std::string& name) const {
  auto it = predicate_ids_.find(name);
  if (it == predicate_ids_.end()) return std::nullopt;
  return it->second;
}

double KnowledgeGraph::avg_links_per_node() const {
  if (entity_names_.empty()) return 0.0;
  return static_cast<double>(n_triples()) /
         static_cast<double>(entity_names_.size());
}

std::string KnowledgeGraph::stats_line(const std::string& name) const {
  std::ostringstream os;
  os << "dataset=" << name << " triples=" << n_triples()
     << " entities=" << n_entities() << " predicates=" << n_predicates()
     << " train=" << train_.size() << " valid=" << valid_.size()
     << " test=" << test_.size()
     << " avg_links_per_node=" << format_double(avg_links_per_node());
  return os.str();
}

Triple corrupt(const Triple& t, CorruptSide side, Rng& rng,
               const KnowledgeGraph& kg, bool filtered) {
  const std::uint64_t n = kg.n_entities();
  if (n < 2) throw std::runtime_error("corrupt: need at least 2 entities");
  const std::uint32_t original = side == CorruptSide::object ? t.o : t.s;

  auto draw = [&]() {
    auto c = static_cast<std::uint32_t>(rng.uniform_int(n));
    if (c == original) c = static_cast<std::uint32_t>(rng.uniform_int(n));
    return c;
  };

  std::uint32_t candidate = draw();
  if (filtered) {
    // Observed positives are rejected; bounded so adversarial graphs where
    // (almost) everything is observed still terminate.
    for (int attempt = 0; attempt < 128; ++attempt) {
      const bool hits_positive =
          side == CorruptSide::object
              ? kg.observed(t.s, t.p, candidate)
              : kg.observed(candidate, t.p, t.o);
      if (!hits_positive && candidate != original) break;
      candidate = draw();
    }
  }

  Triple out = t;
  if (side == CorruptSide::object) {
    out.o = candidate;
  } else {
    out.s = candidate;
  }
  return out;
}

BatchIterator::BatchIterator(const KnowledgeGraph& kg, std::size_t batch_size,
                             std::size_t negatives_per_positive, Rng& rng,
                             bool filtered_negatives)
    : kg_(kg),
      rng_(rng),
      negatives_per_positive_(negatives_per_positive),
      filtered_(filtered_negatives) {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
  positives_per_batch_ =
      std::max<std::size_t>(1, batch_size / (1 + negatives_per_positive));
  const auto& train = kg.triples(Split::train);
  order_.resize(train.size());
  for (std::size_t i = 0; i < order_.size(); ++i) {
    order_[i] = static_cast<std::uint32_t>(i);
  }
  for (std::size_t i = order_.size(); i > 1; --i) {
    std::swap(order_[i - 1], order_[rng_.uniform_int(i)]);
  }
}

bool BatchIterator::next(std::vector<LabeledTriple>& out) {
  out.clear();
  const auto& train = kg_.triples(Split::train);
  if (cursor_ >= order_.size()) return false;
  const std::size_t end = std::min(cursor_ + positives_per_batch_, order_.size());
  for (std::size_t i = cursor_; i < end; ++i) {
    const Triple& pos = train[order_[i]];
    out.push_back(LabeledTriple{pos, 1.0});
    for (std::size_t j = 0; j < negatives_per_positive_; ++j) {
      const CorruptSide side =
          (j % 2 == 0) ? CorruptSide::object : CorruptSide::subject;
      out.push_back(LabeledTriple{corrupt(pos, side, rng_, kg_, filtered_), -1.0});
    }
  }
  cursor_ = end;
  return true;
}

}  // namespace qkge
