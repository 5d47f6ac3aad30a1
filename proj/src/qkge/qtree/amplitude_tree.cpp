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
#include "qkge/qtree/amplitude_tree.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qkge {

AmplitudeTree AmplitudeTree::build(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("AmplitudeTree: empty vector");
  bool any_nonzero = false;
  for (double v : x) {
    if (v != 0.0) {
      any_nonzero = true;
      break;
    }
  }
  if (!any_nonzero) {
    throw std::invalid_argument("AmplitudeTree: all-zero vector cannot be "
                                "normalized into a state");
  }

  AmplitudeTree t;
  t.source_size_ = x.size();
  const std::size_t padded = std::bit_ceil(x.size());
  t.depth_ = static_cast<int>(std::countr_zero(padded));
  t.levels_.resize(static_cast<std::size_t>(t.depth_) + 1);
  for (int level = 0; level <= t.depth_; ++level) {
    t.levels_[static_cast<std::size_t>(level)].assign(std::size_t{1} << level,
                                                      0.0);
  }
  t.signs_.assign(padded, 1.0);

  auto& leaves = t.levels_.back();
  for (std::size_t k = 0; k < x.size(); ++k) {
    leaves[k] = x[k] * x[k];
    if (x[k] < 0.0) t.signs_[k] = -1.0;
  }
  for (int level = t.depth_ - 1; level >= 0; --level) {
    auto& row = t.levels_[static_cast<std::size_t>(level)];
    const auto& below = t.levels_[static_cast<std::size_t>(level) + 1];
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = below[2 * j] + below[2 * j + 1];
    }
  }
  return t;
}

double AmplitudeTree::node(int level, std::size_t index) const {
  if (level < 0 || level > depth_) {
    throw std::out_of_range("AmplitudeTree::node: bad level");
  }
  const auto& row = levels_[static_cast<std::size_t>(level)];
  if (index >= row.size()) {
    throw std::out_of_range("AmplitudeTree::node: bad index");
  }
  return row[index];
}

double AmplitudeTree::sign(std::size_t leaf) const {
  if (leaf >= signs_.size()) {
    throw std::out_of_range("AmplitudeTree::sign: bad leaf");
  }
  return signs_[leaf];
}

double AmplitudeTree::rotation_angle(int level, std::size_t index) const {
  if (level < 0 || level >= depth_) {
    throw std::out_of_range("AmplitudeTree::rotation_angle: not an inner node");
  }
  if (node(level, index) == 0.0) return 0.0;
  const auto& below = levels_[static_cast<std::size_t>(level) + 1];
  return std::atan2(std::sqrt(below[2 * index + 1]),
                    std::sqrt(below[2 * index]));
}

std::size_t AmplitudeTree::update(std::size_t k, double value) {
  if (k >= source_size_) {
    throw std::out_of_range("AmplitudeTree::update: entry " +
                            std::to_string(k) + " out of range");
  }
  signs_[k] = value < 0.0 ? -1.0 : 1.0;
  levels_.back()[k] = value * value;
  std::size_t idx = k;
  for (int level = depth_ - 1; level >= 0; --level) {
    idx /= 2;
    auto& row = levels_[static_cast<std::size_t>(level)];
    const auto& below = levels_[static_cast<std::size_t>(level) + 1];
    row[idx] = below[2 * idx] + below[2 * idx + 1];
  }
  return static_cast<std::size_t>(depth_) + 1;
}

std::size_t AmplitudeTree::prepare_into(StateVector& state, int first_qubit,
                                        std::uint64_t ctrl_mask,
                                        std::uint64_t ctrl_value) const {
  if (depth_ == 0) {
    throw std::invalid_argument(
        "AmplitudeTree::prepare_into: single-entry tree has no register");
  }
  if (first_qubit < 1 || first_qubit + depth_ - 1 > state.n_qubits()) {
    throw std::out_of_range("AmplitudeTree::prepare_into: wires exceed register");
  }

  std::size_t rotations = 0;
  for (int level = 0; level < depth_; ++level) {
    const auto& row = levels_[static_cast<std::size_t>(level)];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0.0) continue;  // unreached branch
      std::uint64_t mask = ctrl_mask;
      std::uint64_t value = ctrl_value;
      for (int t = 0; t < level; ++t) {
        const std::uint64_t qbit = state.qubit_mask(first_qubit + t);
        mask |= qbit;
        if ((j >> (level - 1 - t)) & 1) value |= qbit;
      }
      state.apply_masked(first_qubit + level, mask, value,
                         rotation_2x2(rotation_angle(level, j)));
      ++rotations;
    }
  }

  // Signs last: amplitudes are |x_k| / ||x|| at this point.
  for (std::size_t k = 0; k < signs_.size(); ++k) {
    if (signs_[k] >= 0.0) continue;
    std::uint64_t mask = ctrl_mask;
    std::uint64_t value = ctrl_value;
    for (int t = 0; t + 1 < depth_; ++t) {
      const std::uint64_t qbit = state.qubit_mask(first_qubit + t);
      mask |= qbit;
      if ((k >> (depth_ - 1 - t)) & 1) value |= qbit;
    }
    const bool last_bit = k & 1;
    const TwoByTwo flip = last_bit ? TwoByTwo{1.0, 0.0, 0.0, -1.0}
                                   : TwoByTwo{-1.0, 0.0, 0.0, 1.0};
    state.apply_masked(first_qubit + depth_ - 1, mask, value, flip);
  }
  return rotations;
}

StateVector AmplitudeTree::prepare_state() const {
  StateVector state(depth_ == 0 ? 1 : depth_);
  prepare_into(state);
  return state;
}

}  // namespace qkge
