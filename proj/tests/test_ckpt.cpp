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

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "qkge/ckpt/checkpoint.hpp"
#include "qkge/util/csv.hpp"
#include "qkge/util/rng.hpp"
#include "support/synth.hpp"

namespace {

using qkge::CheckpointData;
using qkge::ModelKind;
using qkge::Rng;

CheckpointData sample_data(ModelKind kind, std::uint64_t seed) {
  CheckpointData data;
  data.kind = kind;
  data.dataset = "unit-fixture";
  data.n_entities = 7;
  data.n_predicates = 3;
  data.entity_vocab_hash = 0x1234;
  data.predicate_vocab_hash = 0x5678;
  data.config.learning_rate = 0.0125;
  data.config.batch_size = 48;
  data.config.max_epochs = 17;
  data.config.kappa = 2;
  data.config.dropout = qkge::is_quantum(kind) ? 0.05 : 0.0;
  data.config.lambda = 0.001;
  data.config.seed = seed;
  data.epochs_run = 17;
  data.best_epoch = 12;
  data.best_hits3 = 0.8125;
  Rng rng(seed);
  if (qkge::is_quantum(kind)) {
    data.quantum = qkge::init_quantum_model(kind, 3, data.n_entities,
                                            data.n_predicates, data.config, rng);
  } else {
    data.classical = qkge::init_classical_model(kind, 4, data.n_entities,
                                                data.n_predicates, data.config,
                                                rng);
    data.classical.lambda = data.config.lambda;
  }
  return data;
}

void check_equal(const CheckpointData& a, const CheckpointData& b) {
  CHECK(a.kind == b.kind);
  CHECK(a.dataset == b.dataset);
  CHECK(a.n_entities == b.n_entities);
  CHECK(a.n_predicates == b.n_predicates);
  CHECK(a.entity_vocab_hash == b.entity_vocab_hash);
  CHECK(a.predicate_vocab_hash == b.predicate_vocab_hash);
  CHECK(a.config.learning_rate == b.config.learning_rate);
  CHECK(a.config.batch_size == b.config.batch_size);
  CHECK(a.config.max_epochs == b.config.max_epochs);
  CHECK(a.config.kappa == b.config.kappa);
  CHECK(a.config.dropout == b.config.dropout);
  CHECK(a.config.lambda == b.config.lambda);
  CHECK(a.config.seed == b.config.seed);
  CHECK(a.epochs_run == b.epochs_run);
  CHECK(a.best_epoch == b.best_epoch);
  CHECK(a.best_hits3 == b.best_hits3);
  if (qkge::is_quantum(a.kind)) {
    CHECK(a.quantum.n_qubits == b.quantum.n_qubits);
    REQUIRE(a.quantum.pred_params.size() == b.quantum.pred_params.size());
    for (std::size_t p = 0; p < a.quantum.pred_params.size(); ++p) {
      const auto& ga = a.quantum.pred_params[p].gates;
      const auto& gb = b.quantum.pred_params[p].gates;
      REQUIRE(ga.size() == gb.size());
      for (std::size_t i = 0; i < ga.size(); ++i) {
        CHECK(ga[i].alpha == gb[i].alpha);
        CHECK(ga[i].beta == gb[i].beta);
        CHECK(ga[i].gamma == gb[i].gamma);
      }
    }
    if (a.kind == ModelKind::qce) {
      REQUIRE(a.quantum.entity_vecs.size() == b.quantum.entity_vecs.size());
      REQUIRE(a.quantum.entity_trees.size() == b.quantum.entity_vecs.size());
      for (std::size_t e = 0; e < a.quantum.entity_vecs.size(); ++e) {
        CHECK(a.quantum.entity_vecs[e] == b.quantum.entity_vecs[e]);
      }
    } else {
      REQUIRE(a.quantum.entity_params.size() == b.quantum.entity_params.size());
      for (std::size_t e = 0; e < a.quantum.entity_params.size(); ++e) {
        const auto& ga = a.quantum.entity_params[e].gates;
        const auto& gb = b.quantum.entity_params[e].gates;
        REQUIRE(ga.size() == gb.size());
        for (std::size_t i = 0; i < ga.size(); ++i) {
          CHECK(ga[i].alpha == gb[i].alpha);
        }
      }
    }
  } else {
    CHECK(a.classical.kind == b.classical.kind);
    CHECK(a.classical.rank == b.classical.rank);
    CHECK(a.classical.lambda == b.classical.lambda);
    CHECK(a.classical.entities == b.classical.entities);
    CHECK(a.classical.predicates == b.classical.predicates);
    CHECK(a.classical.core == b.classical.core);
  }
}

}  // namespace

TEST_CASE("checkpoints round-trip every model kind exactly") {
  const auto dir = qkge::testing::make_temp_dir("ckpt_roundtrip");
  int i = 0;
  for (ModelKind kind :
       {ModelKind::qce, ModelKind::fqce, ModelKind::rescal, ModelKind::distmult,
        ModelKind::complex_bilinear, ModelKind::tucker}) {
    const std::string path = dir + "/model" + std::to_string(i) + ".qkge";
    auto data = sample_data(kind, 1000 + static_cast<unsigned>(i));
    qkge::save_checkpoint(path, data);
    auto loaded = qkge::load_checkpoint(path);
    check_equal(data, loaded);

    // Write-read-write produces byte-identical files: no timestamps, no
    // environment leakage, fully deterministic serialization.
    const std::string again = path + ".resave";
    qkge::save_checkpoint(again, loaded);
    CHECK(qkge::read_text_file(path) == qkge::read_text_file(again));
    ++i;
  }
}

TEST_CASE("saving twice yields identical bytes") {
  const auto dir = qkge::testing::make_temp_dir("ckpt_twice");
  auto data = sample_data(ModelKind::fqce, 9);
  qkge::save_checkpoint(dir + "/a.qkge", data);
  qkge::save_checkpoint(dir + "/b.qkge", data);
  CHECK(qkge::read_text_file(dir + "/a.qkge") ==
        qkge::read_text_file(dir + "/b.qkge"));
}

TEST_CASE("corruption, truncation, and bad magic are all rejected") {
  const auto dir = qkge::testing::make_temp_dir("ckpt_corrupt");
  const std::string path = dir + "/model.qkge";
  qkge::save_checkpoint(path, sample_data(ModelKind::distmult, 11));
  const std::string raw = qkge::read_text_file(path);
  REQUIRE(raw.size() > 64);

  SUBCASE("flipped payload byte fails the checksum") {
    std::string bad = raw;
    bad[bad.size() / 2] = static_cast<char>(bad[bad.size() / 2] ^ 0x40);
    qkge::write_text_file(path + ".flip", bad);
    try {
      qkge::load_checkpoint(path + ".flip");
      FAIL("expected checksum mismatch");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("checksum mismatch") !=
            std::string::npos);
    }
  }

  SUBCASE("truncated file is rejected") {
    qkge::write_text_file(path + ".trunc", raw.substr(0, raw.size() - 37));
    CHECK_THROWS_AS(qkge::load_checkpoint(path + ".trunc"),
                    std::runtime_error);
    qkge::write_text_file(path + ".stub", raw.substr(0, 10));
    CHECK_THROWS_AS(qkge::load_checkpoint(path + ".stub"), std::runtime_error);
  }

  SUBCASE("missing payload bytes are caught even with a fixed checksum") {
    // Remove 8 payload bytes and append a recomputed valid checksum so the
    // structural validation, not the checksum, must catch it.
    std::string cut = raw.substr(0, raw.size() - 16);
    const std::uint64_t sum = qkge::fnv1a64(cut.data(), cut.size());
    char sum_bytes[8];
    std::memcpy(sum_bytes, &sum, 8);
    cut.append(sum_bytes, 8);
    qkge::write_text_file(path + ".cut", cut);
    try {
      qkge::load_checkpoint(path + ".cut");
      FAIL("expected a payload size error");
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      CHECK((msg.find("payload") != std::string::npos ||
             msg.find("truncated") != std::string::npos));
    }
  }

  SUBCASE("non-checkpoint bytes are identified as such") {
    qkge::write_text_file(path + ".junk",
                          "model=distmult\nthis is not a binary checkpoint\n");
    try {
      qkge::load_checkpoint(path + ".junk");
      FAIL("expected a magic error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("not a checkpoint file") !=
            std::string::npos);
    }
  }

  SUBCASE("missing file names the path") {
    try {
      qkge::load_checkpoint(dir + "/absent.qkge");
      FAIL("expected an open error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
    }
  }
}

TEST_CASE("future versions are rejected by number") {
  const auto dir = qkge::testing::make_temp_dir("ckpt_version");
  const std::string path = dir + "/model.qkge";
  qkge::save_checkpoint(path, sample_data(ModelKind::qce, 13));
  std::string raw = qkge::read_text_file(path);

  // Bump the little-endian u32 version at offset 8 and re-sign the file.
  const std::uint32_t fake = qkge::kCheckpointVersion + 1;
  std::memcpy(raw.data() + 8, &fake, 4);
  raw.resize(raw.size() - 8);
  const std::uint64_t sum = qkge::fnv1a64(raw.data(), raw.size());
  char sum_bytes[8];
  std::memcpy(sum_bytes, &sum, 8);
  raw.append(sum_bytes, 8);
  qkge::write_text_file(path, raw);

  try {
    qkge::load_checkpoint(path);
    FAIL("expected a version error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unsupported checkpoint version 2") != std::string::npos);
  }
}

TEST_CASE("vocab hash is order-sensitive fnv over joined names") {
  const std::vector<std::string> names{"ada", "bob", "cid"};
  const std::string joined = "ada\nbob\ncid\n";
  CHECK(qkge::vocab_hash(names) ==
        qkge::fnv1a64(joined.data(), joined.size()));
  CHECK(qkge::vocab_hash({"ada", "bob"}) != qkge::vocab_hash({"bob", "ada"}));
  CHECK(qkge::vocab_hash({}) == 0xcbf29ce484222325ull);
  // Separator prevents concatenation collisions.
  CHECK(qkge::vocab_hash({"ab", "c"}) != qkge::vocab_hash({"a", "bc"}));
}

TEST_CASE("loaded qce models can prepare states immediately") {
  const auto dir = qkge::testing::make_temp_dir("ckpt_trees");
  const std::string path = dir + "/qce.qkge";
  auto data = sample_data(ModelKind::qce, 404);
  qkge::save_checkpoint(path, data);
  auto loaded = qkge::load_checkpoint(path);
  REQUIRE(loaded.quantum.entity_trees.size() == loaded.quantum.entity_vecs.size());
  for (std::size_t e = 0; e < loaded.quantum.n_entities(); ++e) {
    auto state = loaded.quantum.entity_state(e);
    CHECK(state.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  }
}
