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
#include <span>
#include <vector>

#include "qkge/qsim/state_vector.hpp"

namespace qkge {

// Binary tree over a real vector x: leaves hold x_k^2 (plus the sign of
// x_k), inner nodes hold the sum of their children. Loading the vector as
// state amplitudes walks the levels with conditional rotations
// theta = atan2(sqrt(right), sqrt(left)) and flips leaf signs afterwards.
// Vectors whose length is not a power of two are zero-padded.
class AmplitudeTree {
 public:
  // x must be non-empty with at least one nonzero entry.
  static AmplitudeTree build(std::span<const double> x);

  // Number of rotation levels; leaf_count() == 2^depth().
  int depth() const noexcept { return depth_; }
  std::size_t leaf_count() const noexcept { return levels_.back().size(); }
  // Length of the source vector (before padding).
  std::size_t source_size() const noexcept { return source_size_; }

  // levels run 0 (root) .. depth (leaves, squared entries).
  double node(int level, std::size_t index) const;
  double sign(std::size_t leaf) const;

  // Rotation at an inner node; zero-mass nodes rotate by 0 (their subtree
  // is never reached).
  double rotation_angle(int level, std::size_t index) const;

  // Replaces entry k of the source vector; recomputes the root-to-leaf path
  // only. Returns the number of tree nodes touched (depth + 1).
  std::size_t update(std::size_t k, double value);

  // Applies the loading circuit to the depth() qubits starting at
  // first_qubit, which must be in the |0...0> subspace (amplitude mass on
  // index 0 of those wires) wherever ctrl_mask/ctrl_value select. Returns
  // the number of conditional rotations applied. Throws when depth() == 0:
  // a single-leaf tree has no qubits to rotate.
  std::size_t prepare_into(StateVector& state, int first_qubit = 1,
                           std::uint64_t ctrl_mask = 0,
                           std::uint64_t ctrl_value = 0) const;

  // Loading circuit from |0...0>: amplitudes equal x / ||x||.
  StateVector prepare_state() const;

 private:
  AmplitudeTree() = default;

  int depth_ = 0;
  std::size_t source_size_ = 0;
  std::vector<std::vector<double>> levels_;
  std::vector<double> signs_;
};

}  // namespace qkge
