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
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qkge/inference/inference.hpp"
#include "qkge/scoring/scoring.hpp"
#include "qkge/training/training.hpp"
#include "support/oracles.hpp"

namespace {

using qkge::ModelKind;
using qkge::QuantumModel;
using qkge::Rng;

QuantumModel random_model(ModelKind kind, int n_qubits, std::size_t n_e,
                          std::size_t n_p, std::uint64_t seed) {
  qkge::TrainConfig cfg;
  Rng rng(seed);
  return qkge::init_quantum_model(kind, n_qubits, n_e, n_p, cfg, rng);
}

double state_norm_sq(const qkge::InferenceState& state) {
  return state.psi.norm_sq();
}

}  // namespace

TEST_CASE("iteration count follows the square-root schedule") {
  // floor((pi/4) sqrt(2 * 104 / 1)) = floor(11.32) = 11.
  CHECK(qkge::iteration_count(104, 1) == 11);
  // floor((pi/4) sqrt(128)) = floor(8.88) = 8.
  CHECK(qkge::iteration_count(64, 1) == 8);
  CHECK(qkge::iteration_count(64, 4) == 4);
  // H = 2 N_e saturates: floor(pi/4) = 0.
  CHECK(qkge::iteration_count(8, 16) == 0);
  // H beyond the good-subspace bound degrades to no iterations.
  CHECK(qkge::iteration_count(8, 17) == 0);
}

TEST_CASE("realistic state encodes every score in the ancilla-0 branch") {
  auto model = random_model(ModelKind::fqce, 2, 5, 3, 61);
  auto state = qkge::build_inference_state(model, 3, 1);
  CHECK(state.n_entities == 5);
  CHECK(state.index_bits == 3);  // ceil(log2 5)
  CHECK(state.rep_bits == 2);
  CHECK(state.total_qubits() == 6);
  CHECK_FALSE(state.idealistic);
  CHECK(state_norm_sq(state) == doctest::Approx(1.0).epsilon(1e-12));

  auto p0 = qkge::index_probabilities(state, 0);
  auto p1 = qkge::index_probabilities(state, 1);
  REQUIRE(p0.size() == 5);
  double total = 0.0;
  for (std::uint32_t e = 0; e < 5; ++e) {
    const double eta = qkge::eta_exact(model, 3, 1, e);
    CHECK(p0[e] == doctest::Approx((1.0 + eta) / 10.0).epsilon(1e-10));
    total += p0[e] + p1[e];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  // Padding indices 5..7 hold no amplitude in either branch.
  for (int a : {0, 1}) {
    for (std::size_t idx = 5; idx < 8; ++idx) {
      double mass = 0.0;
      for (std::size_t r = 0; r < 4; ++r) {
        const std::size_t basis = (static_cast<std::size_t>(a) << 5) |
                                  (idx << 2) | r;
        mass += std::norm(state.psi.amplitude(basis));
      }
      CHECK(mass < 1e-20);
    }
  }

  // Marginal Pr(ancilla = 0) is the score average shifted to [0, 1].
  double shifted = 0.0;
  for (std::uint32_t e = 0; e < 5; ++e) {
    shifted += (1.0 + qkge::eta_exact(model, 3, 1, e)) / 10.0;
  }
  CHECK(state.psi.bit_probability(1, 0) ==
        doctest::Approx(shifted).epsilon(1e-10));
}

TEST_CASE("realistic qce state uses the tree-loaded embeddings") {
  auto model = random_model(ModelKind::qce, 2, 4, 2, 62);
  auto state = qkge::build_inference_state(model, 0, 1);
  auto p0 = qkge::index_probabilities(state, 0);
  for (std::uint32_t e = 0; e < 4; ++e) {
    const double eta = qkge::eta_exact(model, 0, 1, e);
    CHECK(p0[e] == doctest::Approx((1.0 + eta) / 8.0).epsilon(1e-10));
  }
}

TEST_CASE("idealistic state splits mass between solutions and the rest") {
  const std::size_t n = 6;
  std::vector<std::uint8_t> solutions(n, 0);
  solutions[2] = 1;
  solutions[5] = 1;
  auto state = qkge::build_idealistic_state(n, solutions, 0);
  CHECK(state.idealistic);
  CHECK(state.rep_bits == 0);
  CHECK(state_norm_sq(state) == doctest::Approx(1.0).epsilon(1e-12));

  auto p0 = qkge::index_probabilities(state, 0);
  auto p1 = qkge::index_probabilities(state, 1);
  double good = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    if (solutions[e]) {
      CHECK(p0[e] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    } else {
      CHECK(p0[e] < 1e-18);
    }
    good += p0[e];
    (void)p1;
  }
  CHECK(good == doctest::Approx(2.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("amplification matches the closed form and keeps zeros at zero") {
  const std::size_t n = 64;
  std::vector<std::uint8_t> solutions(n, 0);
  solutions[17] = 1;
  auto state = qkge::build_idealistic_state(n, solutions, 0);

  const std::uint32_t m = qkge::iteration_count(n, 1);
  CHECK(m == 8);

  // theta_0 = arcsin sqrt(1/128); success = sin^2(17 theta_0).
  const double theta0 = std::asin(std::sqrt(1.0 / 128.0));
  const double closed = std::sin(17.0 * theta0) * std::sin(17.0 * theta0);
  CHECK(qkge::idealistic_success_probability(n, 1, m) ==
        doctest::Approx(closed).epsilon(1e-12));
  CHECK(closed >= 0.99);

  for (std::uint32_t step = 0; step < m; ++step) {
    qkge::amplify(state, 1);
    CHECK(state_norm_sq(state) == doctest::Approx(1.0).epsilon(1e-10));
  }
  const double p0 = state.psi.bit_probability(1, 0);
  CHECK(p0 == doctest::Approx(closed).epsilon(1e-8));

  // Non-solution ancilla-0 amplitudes stay exactly dark through rotation.
  auto p0_index = qkge::index_probabilities(state, 0);
  for (std::size_t e = 0; e < n; ++e) {
    if (e != 17) CHECK(p0_index[e] < 1e-16);
  }
  CHECK(p0_index[17] == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("amplify with zero iterations is the identity") {
  std::vector<std::uint8_t> solutions(8, 0);
  solutions[1] = 1;
  auto state = qkge::build_idealistic_state(8, solutions, 0);
  auto before = qkge::index_probabilities(state, 0);
  qkge::amplify(state, 0);
  auto after = qkge::index_probabilities(state, 0);
  CHECK(qkge::testing::max_abs_diff_real(before, after) == 0.0);
}

TEST_CASE("closed-form success probability spans parameter combinations") {
  for (std::size_t n : {16, 64, 104}) {
    for (std::size_t h : {std::size_t{1}, std::size_t{3}}) {
      const double theta0 =
          std::asin(std::sqrt(static_cast<double>(h) / (2.0 * n)));
      for (std::uint32_t m : {0u, 1u, 5u}) {
        const double want = std::pow(std::sin((2.0 * m + 1.0) * theta0), 2.0);
        CHECK(qkge::idealistic_success_probability(n, h, m) ==
              doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
  // m = 0 leaves the bare preparation probability H / (2 N_e).
  CHECK(qkge::idealistic_success_probability(50, 2, 0) ==
        doctest::Approx(2.0 / 100.0).epsilon(1e-12));
}

TEST_CASE("amplification drives the kinship-scale count to near certainty") {
  const std::size_t n = 104;
  std::vector<std::uint8_t> solutions(n, 0);
  solutions[40] = 1;
  auto state = qkge::build_idealistic_state(n, solutions, 0);
  const std::uint32_t m = qkge::iteration_count(n, 1);
  CHECK(m == 11);
  qkge::amplify(state, m);
  const double p0 = state.psi.bit_probability(1, 0);
  CHECK(p0 == doctest::Approx(qkge::idealistic_success_probability(n, 1, m))
                  .epsilon(1e-8));
  CHECK(p0 > 0.99);
}

TEST_CASE("sampling is reproducible and post-selects solutions") {
  std::vector<std::uint8_t> solutions(64, 0);
  solutions[9] = 1;
  auto state = qkge::build_idealistic_state(64, solutions, 0);
  qkge::amplify(state, qkge::iteration_count(64, 1));

  Rng a(7), b(7);
  auto ra = qkge::sample_candidates(state, 20000, a, 5);
  auto rb = qkge::sample_candidates(state, 20000, b, 5);
  CHECK(ra.post_selected == rb.post_selected);
  CHECK(ra.tallies == rb.tallies);
  CHECK(ra.top == rb.top);

  // Success probability > 0.99, and every good draw lands on the solution.
  CHECK(ra.shots == 20000);
  CHECK(ra.post_selected > 19500);
  REQUIRE(!ra.top.empty());
  CHECK(ra.top[0].first == 9);
  CHECK(ra.top[0].second == ra.post_selected);
}

TEST_CASE("realistic sampling tracks the score distribution") {
  auto model = random_model(ModelKind::fqce, 2, 4, 2, 63);
  auto state = qkge::build_inference_state(model, 1, 0);
  // No amplification: Pr(0, i) = (1 + eta_i) / (2 N_e) directly.
  std::vector<double> probs = qkge::index_probabilities(state, 0);
  const double p_good = std::accumulate(probs.begin(), probs.end(), 0.0);

  Rng rng(11);
  auto report = qkge::sample_candidates(state, 200000, rng, 4);
  CHECK(report.shots == 200000);

  // Binomial check on the post-selection rate (5 sigma margin).
  const double sd = std::sqrt(200000.0 * p_good * (1.0 - p_good));
  CHECK(std::abs(static_cast<double>(report.post_selected) -
                 200000.0 * p_good) < 5.0 * sd);

  // Chi-square goodness of fit of the index tallies against (1 + eta).
  REQUIRE(report.tallies.size() == 4);
  double stat = 0.0;
  for (std::size_t e = 0; e < 4; ++e) {
    const double expected =
        static_cast<double>(report.post_selected) * probs[e] / p_good;
    stat += (report.tallies[e] - expected) * (report.tallies[e] - expected) /
            expected;
  }
  CHECK(stat < qkge::testing::chi_square_critical(3));
}

TEST_CASE("run_inference fills the bookkeeping fields consistently") {
  std::vector<std::uint8_t> solutions(32, 0);
  solutions[3] = 1;
  solutions[21] = 1;
  auto state = qkge::build_idealistic_state(32, solutions, 0);
  const double p0_before = state.psi.bit_probability(1, 0);
  const std::uint32_t m = qkge::iteration_count(32, 2);

  Rng rng(13);
  auto report = qkge::run_inference(state, m, 50000, rng, 3);
  CHECK(report.n_entities == 32);
  CHECK(report.iterations == m);
  CHECK(report.p0_initial == doctest::Approx(p0_before).epsilon(1e-12));
  CHECK(report.p1_initial == doctest::Approx(1.0 - p0_before).epsilon(1e-12));
  CHECK(report.success_probability ==
        doctest::Approx(qkge::idealistic_success_probability(32, 2, m))
            .epsilon(1e-8));
  REQUIRE(report.p0_index_initial.size() == 32);
  REQUIRE(report.p0_index_amplified.size() == 32);
  CHECK(report.p0_index_initial[3] == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
  CHECK(report.p0_index_amplified[3] >
        10.0 * report.p0_index_initial[3]);
  CHECK(report.top.size() <= 3);
  const std::uint64_t tallied = std::accumulate(
      report.tallies.begin(), report.tallies.end(), std::uint64_t{0});
  CHECK(tallied == report.post_selected);

  // Both solutions dominate the top list.
  REQUIRE(report.top.size() >= 2);
  const auto i0 = report.top[0].first;
  const auto i1 = report.top[1].first;
  CHECK(((i0 == 3 && i1 == 21) || (i0 == 21 && i1 == 3)));
}

TEST_CASE("inference csv lists one row per entity") {
  std::vector<std::uint8_t> solutions(4, 0);
  solutions[2] = 1;
  auto state = qkge::build_idealistic_state(4, solutions, 0);
  Rng rng(17);
  auto report = qkge::run_inference(state, qkge::iteration_count(4, 1), 1000,
                                    rng, 4);
  const std::vector<std::string> names{"aa", "bb", "cc", "dd"};
  const std::string csv = qkge::inference_csv(report, names);
  CHECK(csv.find(
            "index,entity,probability,amplified_probability,sample_frequency\n") ==
        0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv.find(",cc,") != std::string::npos);

  const std::string anon = qkge::inference_csv(report, {});
  CHECK(std::count(anon.begin(), anon.end(), '\n') == 5);
}

TEST_CASE("register cap rejects oversized constructions") {
  // 2 entities at 23 representation qubits: 1 + 1 + 23 = 25 > 24.
  auto model = random_model(ModelKind::fqce, 23, 2, 1, 64);
  CHECK_THROWS_AS(qkge::build_inference_state(model, 0, 0),
                  std::invalid_argument);
}
