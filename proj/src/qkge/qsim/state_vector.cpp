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
#include "qkge/qsim/state_vector.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "qkge/qsim/kernels.hpp"

namespace qkge {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
  amps_[0] = cplx(1.0, 0.0);
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector sv(n_qubits);
  if (index >= sv.dim()) {
    throw std::out_of_range("StateVector::basis: index " +
                            std::to_string(index) + " out of range");
  }
  sv.amps_[0] = cplx(0.0, 0.0);
  sv.amps_[index] = cplx(1.0, 0.0);
  return sv;
}

cplx StateVector::amplitude(std::uint64_t index) const {
  if (index >= dim()) {
    throw std::out_of_range("StateVector::amplitude: index out of range");
  }
  return amps_[index];
}

std::uint64_t StateVector::qubit_mask(int qubit) const {
  if (qubit < 1 || qubit > n_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(qubit) +
                            " out of range 1.." + std::to_string(n_qubits_));
  }
  return std::uint64_t{1} << (n_qubits_ - qubit);
}

double StateVector::norm_sq() const {
  return kernels::table().sum_sq_mag(amps_.data(), amps_.size());
}

void StateVector::set_zero_state() {
  std::fill(amps_.begin(), amps_.end(), cplx(0.0, 0.0));
  amps_[0] = cplx(1.0, 0.0);
}

void StateVector::apply_single(int target, const TwoByTwo& m) {
  const std::uint64_t stride = qubit_mask(target);
  kernels::table().apply_2x2(amps_.data(), amps_.size(), stride, m);
}

void StateVector::apply_controlled(int control, int target, const TwoByTwo& m) {
  if (control == target) {
    throw std::invalid_argument("apply_controlled: control equals target");
  }
  const std::uint64_t stride = qubit_mask(target);
  const std::uint64_t ctrl = qubit_mask(control);
  kernels::table().apply_2x2_ctrl(amps_.data(), amps_.size(), stride, ctrl, m);
}

void StateVector::apply_masked(int target, std::uint64_t ctrl_mask,
                               std::uint64_t ctrl_value, const TwoByTwo& m) {
  const std::uint64_t stride = qubit_mask(target);
  if (ctrl_mask & stride) {
    throw std::invalid_argument("apply_masked: control mask covers the target");
  }
  if (ctrl_value & ~ctrl_mask) {
    throw std::invalid_argument("apply_masked: value bits outside the mask");
  }
  if (ctrl_mask >= dim()) {
    throw std::out_of_range("apply_masked: mask beyond register");
  }
  const auto& k = kernels::table();
  if (ctrl_mask == 0) {
    k.apply_2x2(amps_.data(), amps_.size(), stride, m);
  } else if (std::has_single_bit(ctrl_mask) && ctrl_value == ctrl_mask) {
    k.apply_2x2_ctrl(amps_.data(), amps_.size(), stride, ctrl_mask, m);
  } else {
    k.apply_2x2_masked(amps_.data(), amps_.size(), stride, ctrl_mask,
                       ctrl_value, m);
  }
}

void StateVector::project_qubit(int qubit, int bit) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("project_qubit: bit must be 0 or 1");
  }
  const std::uint64_t mask = qubit_mask(qubit);
  const std::uint64_t want = bit ? mask : 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) != want) amps_[i] = cplx(0.0, 0.0);
  }
}

double StateVector::bit_probability(int qubit, int bit) const {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("bit_probability: bit must be 0 or 1");
  }
  const std::uint64_t mask = qubit_mask(qubit);
  const std::uint64_t want = bit ? mask : 0;
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == want) p += std::norm(amps_[i]);
  }
  return p;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch");
  }
  return kernels::table().inner_product(a.data(), b.data(), a.dim());
}

}  // namespace qkge
