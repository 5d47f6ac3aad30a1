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

#include "qkge/qsim/gates.hpp"

namespace qkge {

// Dense n-qubit state. Qubits are numbered 1..n with qubit 1 the most
// significant bit of the amplitude index: basis index
// b = sum_k bit(q_k) * 2^(n-k).
class StateVector {
 public:
  static constexpr int kMaxQubits = 24;

  explicit StateVector(int n_qubits);
  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  cplx* data() noexcept { return amps_.data(); }
  const cplx* data() const noexcept { return amps_.data(); }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  cplx amplitude(std::uint64_t index) const;

  // Bit mask of a qubit within the amplitude index; throws on a bad qubit.
  std::uint64_t qubit_mask(int qubit) const;

  double norm_sq() const;
  void set_zero_state();

  void apply_single(int target, const TwoByTwo& m);
  void apply_controlled(int control, int target, const TwoByTwo& m);

  // Applies m to the target conditioned on (index & ctrl_mask) == ctrl_value.
  // Masks are absolute index bits (see qubit_mask); the target bit must not
  // appear in ctrl_mask. Routes to the cheapest kernel for the mask shape.
  void apply_masked(int target, std::uint64_t ctrl_mask,
                    std::uint64_t ctrl_value, const TwoByTwo& m);

  // Zeroes every amplitude whose `qubit` bit differs from `bit`. Not a
  // unitary; used by derivative circuits for controlled slots.
  void project_qubit(int qubit, int bit);

  // Probability mass of the subspace where `qubit` reads `bit`.
  double bit_probability(int qubit, int bit) const;

 private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

// sum conj(a[i]) * b[i]; dimensions must match.
cplx inner_product(const StateVector& a, const StateVector& b);

}  // namespace qkge
