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

#include <algorithm>
#include <set>
#include <string>
#include <filesystem>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "qkge/kgdata/kgdata.hpp"
#include "qkge/util/csv.hpp"
#include "support/oracles.hpp"
#include "support/synth.hpp"

namespace {

using qkge::CorruptSide;
using qkge::KnowledgeGraph;
using qkge::Rng;
using qkge::Split;
using qkge::Triple;

using TripleKey = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;

TripleKey key_of(const Triple& t) { return {t.s, t.p, t.o}; }

std::multiset<TripleKey> keys_of(const std::vector<Triple>& ts) {
  std::multiset<TripleKey> out;
  for (const Triple& t : ts) out.insert(key_of(t));
  return out;
}

// 100 distinct triples: subjects a0..a9, objects b0..b9, three predicates.
std::string write_hundred(const std::string& dir) {
  std::string text;
  for (int i = 0; i < 100; ++i) {
    text += "a" + std::to_string(i / 10) + "\tr" + std::to_string(i % 3) +
            "\tb" + std::to_string(i % 10) + "\n";
  }
  const std::string path = dir + "/hundred.txt";
  qkge::write_text_file(path, text);
  return path;
}

}  // namespace

TEST_CASE("split directory load carries names, counts, and membership") {
  const auto dir = qkge::testing::make_temp_dir("kg_tiny");
  qkge::testing::write_tiny_dataset(dir);
  auto kg = KnowledgeGraph::load_split_dir(dir);

  CHECK(kg.n_entities() == 6);
  CHECK(kg.n_predicates() == 2);
  CHECK(kg.triples(Split::train).size() == 9);
  CHECK(kg.triples(Split::valid).size() == 2);
  CHECK(kg.triples(Split::test).size() == 2);
  CHECK(kg.n_triples() == 13);
  CHECK(kg.avg_links_per_node() == doctest::Approx(13.0 / 6.0));

  auto ada = kg.find_entity("ada");
  auto likes = kg.find_predicate("likes");
  REQUIRE(ada.has_value());
  REQUIRE(likes.has_value());
  CHECK(kg.entity_name(*ada) == "ada");
  CHECK(kg.predicate_name(*likes) == "likes");
  CHECK_FALSE(kg.find_entity("nobody").has_value());
  CHECK_FALSE(kg.find_predicate("hates").has_value());

  // Membership spans every split.
  auto cid = *kg.find_entity("cid");
  auto dot = *kg.find_entity("dot");
  auto bob = *kg.find_entity("bob");
  auto knows = *kg.find_predicate("knows");
  CHECK(kg.observed(*ada, *likes, cid));   // test split
  CHECK(kg.observed(dot, knows, bob));     // valid split
  CHECK(kg.observed(cid, knows, *ada));    // train split
  CHECK_FALSE(kg.observed(*ada, knows, bob));

  auto line = kg.stats_line("tiny");
  CHECK(line.find("tiny") != std::string::npos);
  CHECK(line.find("6") != std::string::npos);
  CHECK(line.find("13") != std::string::npos);
}

TEST_CASE("duplicate lines collapse to one triple") {
  const auto dir = qkge::testing::make_temp_dir("kg_dup");
  qkge::write_text_file(dir + "/all.txt",
                        "x\tr\ty\n"
                        "y\tr\tz\n"
                        "x\tr\ty\n"
                        "z\tr\tx\n"
                        "x\tr\ty\n");
  auto kg = KnowledgeGraph::load(dir, 7);
  CHECK(kg.n_triples() == 3);
}

TEST_CASE("malformed lines are reported with their line number") {
  const auto dir = qkge::testing::make_temp_dir("kg_bad");
  const std::string path = dir + "/broken.txt";
  qkge::write_text_file(path, "a\tr\tb\nb\tr\tc\nno_tabs_here\n");
  try {
    KnowledgeGraph::load_with_random_split(path, 1);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    CHECK(msg.find(":3") != std::string::npos);
    CHECK(msg.find("subject") != std::string::npos);
  }
}

TEST_CASE("random split is 80/10/10, deterministic, and loses nothing") {
  const auto dir = qkge::testing::make_temp_dir("kg_split");
  const std::string path = write_hundred(dir);

  auto kg = KnowledgeGraph::load_with_random_split(path, 42);
  CHECK(kg.triples(Split::train).size() == 80);
  CHECK(kg.triples(Split::valid).size() == 10);
  CHECK(kg.triples(Split::test).size() == 10);
  CHECK(kg.n_entities() == 20);
  CHECK(kg.n_predicates() == 3);

  // The three splits partition the input exactly.
  auto all = keys_of(kg.triples(Split::train));
  for (Split s : {Split::valid, Split::test}) {
    for (const Triple& t : kg.triples(s)) all.insert(key_of(t));
  }
  CHECK(all.size() == 100);
  CHECK(std::set<TripleKey>(all.begin(), all.end()).size() == 100);

  auto again = KnowledgeGraph::load_with_random_split(path, 42);
  CHECK(keys_of(again.triples(Split::train)) == keys_of(kg.triples(Split::train)));
  CHECK(keys_of(again.triples(Split::valid)) == keys_of(kg.triples(Split::valid)));

  auto other = KnowledgeGraph::load_with_random_split(path, 43);
  CHECK(keys_of(other.triples(Split::valid)) != keys_of(kg.triples(Split::valid)));
}

TEST_CASE("load dispatches on path shape") {
  const auto canonical = qkge::testing::make_temp_dir("kg_disp_dir");
  qkge::testing::write_tiny_dataset(canonical);
  auto a = KnowledgeGraph::load(canonical, 1);
  CHECK(a.triples(Split::train).size() == 9);

  const auto bare = qkge::testing::make_temp_dir("kg_disp_all");
  write_hundred(bare);
  std::filesystem::rename(bare + "/hundred.txt", bare + "/all.txt");
  auto b = KnowledgeGraph::load(bare, 5);
  CHECK(b.triples(Split::train).size() == 80);

  const auto file_dir = qkge::testing::make_temp_dir("kg_disp_file");
  const std::string file = write_hundred(file_dir);
  auto c = KnowledgeGraph::load(file, 5);
  CHECK(c.triples(Split::train).size() == 80);

  CHECK_THROWS_AS(KnowledgeGraph::load(file_dir + "/missing.txt", 1),
                  std::runtime_error);
}

TEST_CASE("corruption preserves the untouched fields") {
  const auto dir = qkge::testing::make_temp_dir("kg_corrupt_fields");
  qkge::testing::write_tiny_dataset(dir);
  auto kg = KnowledgeGraph::load_split_dir(dir);
  Rng rng(3);
  const Triple t = kg.triples(Split::train)[0];
  for (int rep = 0; rep < 200; ++rep) {
    Triple co = qkge::corrupt(t, CorruptSide::object, rng, kg);
    CHECK(co.s == t.s);
    CHECK(co.p == t.p);
    CHECK(co.o < kg.n_entities());
    Triple cs = qkge::corrupt(t, CorruptSide::subject, rng, kg);
    CHECK(cs.o == t.o);
    CHECK(cs.p == t.p);
    CHECK(cs.s < kg.n_entities());
  }
}

TEST_CASE("corruption draw matches the resample-once distribution") {
  const auto dir = qkge::testing::make_temp_dir("kg_corrupt_dist");
  qkge::testing::write_tiny_dataset(dir);
  auto kg = KnowledgeGraph::load_split_dir(dir);
  const double n = static_cast<double>(kg.n_entities());
  const Triple t = kg.triples(Split::train)[0];

  // One uniform draw, redrawn once if it hits the original:
  // P(original) = 1/n^2, P(other) = (n + 1)/n^2 each.
  const int draws = 100000;
  std::vector<double> counts(kg.n_entities(), 0.0);
  Rng rng(2718);
  for (int i = 0; i < draws; ++i) {
    ++counts[qkge::corrupt(t, CorruptSide::object, rng, kg).o];
  }
  double stat = 0.0;
  for (std::size_t e = 0; e < counts.size(); ++e) {
    const double prob =
        e == t.o ? 1.0 / (n * n) : (n + 1.0) / (n * n);
    const double expected = prob * draws;
    stat += (counts[e] - expected) * (counts[e] - expected) / expected;
  }
  CHECK(stat < qkge::testing::chi_square_critical(
                   static_cast<int>(kg.n_entities()) - 1));
}

TEST_CASE("filtered corruption avoids observed positives") {
  const auto dir = qkge::testing::make_temp_dir("kg_corrupt_filtered");
  qkge::testing::SynthOptions opts;
  opts.seed = 21;
  qkge::testing::write_synth_kinship(dir, opts);
  auto kg = KnowledgeGraph::load(dir, 13);
  Rng rng(99);
  const auto& train = kg.triples(Split::train);
  for (int rep = 0; rep < 2000; ++rep) {
    const Triple& t = train[rng.uniform_int(train.size())];
    const CorruptSide side =
        rep % 2 == 0 ? CorruptSide::object : CorruptSide::subject;
    Triple c = qkge::corrupt(t, side, rng, kg, true);
    CHECK_FALSE(kg.observed(c.s, c.p, c.o));
    CHECK(key_of(c) != key_of(t));
  }
}

TEST_CASE("batch iterator yields every positive once with its negatives") {
  const auto dir = qkge::testing::make_temp_dir("kg_batches");
  qkge::testing::write_tiny_dataset(dir);
  auto kg = KnowledgeGraph::load_split_dir(dir);

  Rng rng(77);
  qkge::BatchIterator it(kg, 9, 2, rng);
  CHECK(it.positives_per_batch() == 3);

  std::multiset<TripleKey> seen_positives;
  std::vector<qkge::LabeledTriple> batch;
  int batches = 0;
  while (it.next(batch)) {
    ++batches;
    REQUIRE(batch.size() % 3 == 0);
    for (std::size_t g = 0; g < batch.size(); g += 3) {
      const auto& pos = batch[g];
      const auto& neg_obj = batch[g + 1];
      const auto& neg_subj = batch[g + 2];
      CHECK(pos.y == 1.0);
      CHECK(neg_obj.y == -1.0);
      CHECK(neg_subj.y == -1.0);
      // Object-side corruption first, then subject-side.
      CHECK(neg_obj.t.s == pos.t.s);
      CHECK(neg_obj.t.p == pos.t.p);
      CHECK(neg_subj.t.o == pos.t.o);
      CHECK(neg_subj.t.p == pos.t.p);
      seen_positives.insert(key_of(pos.t));
    }
  }
  CHECK(batches == 3);
  CHECK(seen_positives == keys_of(kg.triples(Split::train)));

  // Same seed replays the identical epoch.
  Rng r1(123), r2(123);
  qkge::BatchIterator a(kg, 6, 1, r1), b(kg, 6, 1, r2);
  std::vector<qkge::LabeledTriple> ba, bb;
  while (true) {
    bool more_a = a.next(ba);
    bool more_b = b.next(bb);
    CHECK(more_a == more_b);
    if (!more_a) break;
    REQUIRE(ba.size() == bb.size());
    for (std::size_t i = 0; i < ba.size(); ++i) {
      CHECK(key_of(ba[i].t) == key_of(bb[i].t));
      CHECK(ba[i].y == bb[i].y);
    }
  }
}

TEST_CASE("short final batch covers the remainder") {
  const auto dir = qkge::testing::make_temp_dir("kg_short_batch");
  qkge::testing::write_tiny_dataset(dir);
  auto kg = KnowledgeGraph::load_split_dir(dir);
  Rng rng(5);
  // 4 positives per batch over 9 training triples: 4 + 4 + 1.
  qkge::BatchIterator it(kg, 8, 1, rng);
  std::vector<qkge::LabeledTriple> batch;
  std::vector<std::size_t> sizes;
  while (it.next(batch)) sizes.push_back(batch.size());
  REQUIRE(sizes.size() == 3);
  CHECK(sizes[0] == 8);
  CHECK(sizes[1] == 8);
  CHECK(sizes[2] == 2);
}
