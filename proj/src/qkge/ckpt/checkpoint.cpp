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

#include "qkge/ckpt/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qkge/circuits/circuit.hpp"
#include "qkge/qtree/amplitude_tree.hpp"
#include "qkge/util/rng.hpp"

namespace qkge {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint layout assumes a little-endian host");

constexpr char kMagic[8] = {'Q', 'K', 'G', 'E', 'C', 'K', 'P', 'T'};

using nlohmann::json;

void append_u32(std::string& out, std::uint32_t v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof v);
}

void append_u64(std::string& out, std::uint64_t v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof v);
}

void append_doubles(std::string& out, const std::vector<double>& v) {
  out.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
}

std::vector<double> flatten_gates(const std::vector<ParamStore>& stores) {
  std::vector<double> flat;
  std::size_t total = 0;
  for (const auto& s : stores) total += 3 * s.gates.size();
  flat.reserve(total);
  for (const auto& s : stores) {
    for (const auto& g : s.gates) {
      flat.push_back(g.alpha);
      flat.push_back(g.beta);
      flat.push_back(g.gamma);
    }
  }
  return flat;
}

void unflatten_gates(const std::vector<double>& flat,
                     std::vector<ParamStore>& stores) {
  std::size_t pos = 0;
  for (auto& s : stores) {
    for (auto& g : s.gates) {
      g.alpha = flat[pos++];
      g.beta = flat[pos++];
      g.gamma = flat[pos++];
    }
  }
  if (pos != flat.size()) {
    throw std::runtime_error("checkpoint: gate block size mismatch");
  }
}

json slots_to_json(const CircuitSpec& spec) {
  json arr = json::array();
  for (const auto& s : spec.slots) {
    arr.push_back(json::array({s.control, s.target}));
  }
  return arr;
}

void check_spec_matches(const CircuitSpec& spec, const json& slots,
                        const char* which) {
  if (slots.size() != spec.slots.size()) {
    throw std::runtime_error(std::string("checkpoint: ") + which +
                             " circuit descriptor does not match the " +
                             "canonical layout");
  }
  for (std::size_t i = 0; i < spec.slots.size(); ++i) {
    if (slots[i][0].get<int>() != spec.slots[i].control ||
        slots[i][1].get<int>() != spec.slots[i].target) {
      throw std::runtime_error(std::string("checkpoint: ") + which +
                               " circuit descriptor does not match the " +
                               "canonical layout");
    }
  }
}

json config_to_json(const TrainConfig& c) {
  return json{{"learning_rate", c.learning_rate},
              {"batch_size", c.batch_size},
              {"max_epochs", c.max_epochs},
              {"eval_every", c.eval_every},
              {"patience", c.patience},
              {"kappa", c.kappa},
              {"negatives_per_positive", c.negatives_per_positive},
              {"init_range", c.init_range},
              {"dropout", c.dropout},
              {"noise_mu", c.noise_mu},
              {"noise_as_variance", c.noise_as_variance},
              {"loss", to_string(c.classical_loss_kind)},
              {"lambda", c.lambda},
              {"seed", c.seed},
              {"threads", c.threads}};
}

TrainConfig config_from_json(const json& j) {
  TrainConfig c;
  c.learning_rate = j.at("learning_rate").get<double>();
  c.batch_size = j.at("batch_size").get<std::uint32_t>();
  c.max_epochs = j.at("max_epochs").get<std::uint32_t>();
  c.eval_every = j.at("eval_every").get<std::uint32_t>();
  c.patience = j.at("patience").get<std::uint32_t>();
  c.kappa = j.at("kappa").get<int>();
  c.negatives_per_positive = j.at("negatives_per_positive").get<std::uint32_t>();
  c.init_range = j.at("init_range").get<double>();
  c.dropout = j.at("dropout").get<double>();
  c.noise_mu = j.at("noise_mu").get<double>();
  c.noise_as_variance = j.at("noise_as_variance").get<bool>();
  c.classical_loss_kind =
      classical_loss_from_string(j.at("loss").get<std::string>());
  c.lambda = j.at("lambda").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<std::uint32_t>();
  return c;
}

}  // namespace

std::uint64_t vocab_hash(const std::vector<std::string>& names) {
  std::uint64_t h = fnv1a64(nullptr, 0);
  for (const auto& n : names) {
    h = fnv1a64(n.data(), n.size(), h);
    const char sep = '\n';
    h = fnv1a64(&sep, 1, h);
  }
  return h;
}

void save_checkpoint(const std::string& path, const CheckpointData& data) {
  json header;
  header["version"] = kCheckpointVersion;
  header["kind"] = to_string(data.kind);
  header["dataset"] = data.dataset;
  header["n_entities"] = data.n_entities;
  header["n_predicates"] = data.n_predicates;
  header["entity_vocab_hash"] = data.entity_vocab_hash;
  header["predicate_vocab_hash"] = data.predicate_vocab_hash;
  header["config"] = config_to_json(data.config);
  header["metrics"] = json{{"epochs_run", data.epochs_run},
                           {"best_epoch", data.best_epoch},
                           {"best_hits3", data.best_hits3}};

  json blocks = json::array();
  std::string payload;
  const auto add_block = [&](const char* name, const std::vector<double>& v) {
    blocks.push_back(json{{"name", name}, {"count", v.size()}});
    append_doubles(payload, v);
  };

  if (is_quantum(data.kind)) {
    const QuantumModel& m = data.quantum;
    json q;
    q["n_qubits"] = m.n_qubits;
    q["pred_slots"] = slots_to_json(m.pred_spec);
    if (data.kind == ModelKind::fqce) {
      q["entity_prelude"] = m.entity_spec.hadamard_prelude;
      q["entity_slots"] = slots_to_json(m.entity_spec);
      add_block("entity_gates", flatten_gates(m.entity_params));
    } else {
      std::vector<double> vecs;
      vecs.reserve(m.entity_vecs.size() * m.rank());
      for (const auto& v : m.entity_vecs) {
        vecs.insert(vecs.end(), v.begin(), v.end());
      }
      add_block("entity_vecs", vecs);
    }
    header["quantum"] = q;
    add_block("pred_gates", flatten_gates(m.pred_params));
  } else {
    const ClassicalModel& m = data.classical;
    header["classical"] = json{{"rank", m.rank}, {"lambda", m.lambda}};
    add_block("entities", m.entities);
    add_block("predicates", m.predicates);
    if (data.kind == ModelKind::tucker) add_block("core", m.core);
  }
  header["blocks"] = blocks;

  const std::string head = header.dump();
  std::string out;
  out.reserve(8 + 4 + 8 + head.size() + payload.size() + 8);
  out.append(kMagic, sizeof kMagic);
  append_u32(out, kCheckpointVersion);
  append_u64(out, head.size());
  out += head;
  out += payload;
  append_u64(out, fnv1a64(out.data(), out.size()));

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write failed for " + path);
}

CheckpointData load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open checkpoint " + path);
  std::string raw((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());
  if (raw.size() < 8 + 4 + 8 + 8 ||
      std::memcmp(raw.data(), kMagic, sizeof kMagic) != 0) {
    throw std::runtime_error(path + " is not a checkpoint file");
  }
  std::uint64_t stored_sum = 0;
  std::memcpy(&stored_sum, raw.data() + raw.size() - 8, 8);
  if (fnv1a64(raw.data(), raw.size() - 8) != stored_sum) {
    throw std::runtime_error("checkpoint " + path +
                             ": checksum mismatch (corrupted file)");
  }
  std::uint32_t version = 0;
  std::memcpy(&version, raw.data() + 8, 4);
  if (version != kCheckpointVersion) {
    throw std::runtime_error(
        "unsupported checkpoint version " + std::to_string(version) +
        " (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  std::uint64_t head_size = 0;
  std::memcpy(&head_size, raw.data() + 12, 8);
  const std::size_t head_off = 20;
  if (head_off + head_size + 8 > raw.size()) {
    throw std::runtime_error("checkpoint " + path + ": truncated header");
  }
  json header;
  try {
    header = json::parse(raw.substr(head_off, head_size));
  } catch (const json::exception& e) {
    throw std::runtime_error("checkpoint " + path + ": bad header: " +
                             e.what());
  }

  CheckpointData data;
  data.kind = model_kind_from_string(header.at("kind").get<std::string>());
  data.dataset = header.at("dataset").get<std::string>();
  data.n_entities = header.at("n_entities").get<std::uint32_t>();
  data.n_predicates = header.at("n_predicates").get<std::uint32_t>();
  data.entity_vocab_hash = header.at("entity_vocab_hash").get<std::uint64_t>();
  data.predicate_vocab_hash =
      header.at("predicate_vocab_hash").get<std::uint64_t>();
  data.config = config_from_json(header.at("config"));
  const json& metrics = header.at("metrics");
  data.epochs_run = metrics.at("epochs_run").get<std::uint32_t>();
  data.best_epoch = metrics.at("best_epoch").get<std::uint32_t>();
  data.best_hits3 = metrics.at("best_hits3").get<double>();

  // Payload blocks, in header order.
  const char* payload = raw.data() + head_off + head_size;
  const std::size_t payload_size = raw.size() - head_off - head_size - 8;
  std::size_t offset = 0;
  std::vector<std::pair<std::string, std::vector<double>>> blocks;
  for (const auto& b : header.at("blocks")) {
    const auto count = b.at("count").get<std::size_t>();
    if (offset + count * sizeof(double) > payload_size) {
      throw std::runtime_error("checkpoint " + path + ": truncated payload");
    }
    std::vector<double> v(count);
    std::memcpy(v.data(), payload + offset, count * sizeof(double));
    offset += count * sizeof(double);
    blocks.emplace_back(b.at("name").get<std::string>(), std::move(v));
  }
  if (offset != payload_size) {
    throw std::runtime_error("checkpoint " + path + ": payload size mismatch");
  }
  const auto block = [&](const char* name) -> const std::vector<double>& {
    for (const auto& [n, v] : blocks) {
      if (n == name) return v;
    }
    throw std::runtime_error("checkpoint " + path + ": missing block " + name);
  };

  if (is_quantum(data.kind)) {
    QuantumModel& m = data.quantum;
    m.kind = data.kind;
    const json& q = header.at("quantum");
    m.n_qubits = q.at("n_qubits").get<int>();
    m.pred_spec = build_spec(m.n_qubits, false);
    check_spec_matches(m.pred_spec, q.at("pred_slots"), "predicate");
    m.pred_params.assign(data.n_predicates, make_zero_params(m.pred_spec));
    for (std::size_t p = 0; p < m.pred_params.size(); ++p) {
      m.pred_params[p].owner = static_cast<std::int64_t>(p);
    }
    unflatten_gates(block("pred_gates"), m.pred_params);
    if (data.kind == ModelKind::fqce) {
      if (!q.at("entity_prelude").get<bool>()) {
        throw std::runtime_error("checkpoint " + path +
                                 ": entity circuit lacks the Hadamard prelude");
      }
      m.entity_spec = build_spec(m.n_qubits, true);
      check_spec_matches(m.entity_spec, q.at("entity_slots"), "entity");
      m.entity_params.assign(data.n_entities,
                             make_zero_params(m.entity_spec));
      for (std::size_t e = 0; e < m.entity_params.size(); ++e) {
        m.entity_params[e].owner = static_cast<std::int64_t>(e);
      }
      unflatten_gates(block("entity_gates"), m.entity_params);
    } else {
      const std::vector<double>& vecs = block("entity_vecs");
      const std::size_t rank = m.rank();
      if (vecs.size() != data.n_entities * rank) {
        throw std::runtime_error("checkpoint " + path +
                                 ": entity vector block size mismatch");
      }
      m.entity_vecs.resize(data.n_entities);
      m.entity_trees.clear();
      m.entity_trees.reserve(data.n_entities);
      for (std::size_t e = 0; e < data.n_entities; ++e) {
        m.entity_vecs[e].assign(vecs.begin() + e * rank,
                                vecs.begin() + (e + 1) * rank);
        m.entity_trees.push_back(AmplitudeTree::build(m.entity_vecs[e]));
      }
    }
  } else {
    const json& c = header.at("classical");
    data.classical = make_classical_model(data.kind, data.n_entities,
                                          data.n_predicates,
                                          c.at("rank").get<std::uint32_t>(),
                                          c.at("lambda").get<double>());
    ClassicalModel& m = data.classical;
    const auto fill = [&](const char* name, std::vector<double>& dst) {
      const std::vector<double>& v = block(name);
      if (v.size() != dst.size()) {
        throw std::runtime_error(std::string("checkpoint block ") + name +
                                 " has the wrong size");
      }
      dst = v;
    };
    fill("entities", m.entities);
    fill("predicates", m.predicates);
    if (data.kind == ModelKind::tucker) fill("core", m.core);
  }
  return data;
}

}  // namespace qkge
