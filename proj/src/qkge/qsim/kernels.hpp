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

#include <cstddef>
#include <string>

#include "qkge/qsim/gates.hpp"

namespace qkge::kernels {

// Hot loops of the statevector simulator. Every kernel updates amplitude
// pairs (i, i + stride) where `stride` is the target-qubit bit and i ranges
// over indices whose target bit is 0.
//
// apply_2x2        unconditional update of every pair
// apply_2x2_ctrl   pairs whose single control bit (ctrl_bit) is 1
// apply_2x2_masked pairs with (i & ctrl_mask) == ctrl_value; neither mask
//                  nor value may include the target bit
// inner_product    sum conj(a[i]) * b[i]
// sum_sq_mag       sum |a[i]|^2
struct KernelTable {
  const char* name;
  void (*apply_2x2)(cplx* amps, std::size_t dim, std::size_t stride,
                    const TwoByTwo& m);
  void (*apply_2x2_ctrl)(cplx* amps, std::size_t dim, std::size_t stride,
                         std::size_t ctrl_bit, const TwoByTwo& m);
  void (*apply_2x2_masked)(cplx* amps, std::size_t dim, std::size_t stride,
                           std::size_t ctrl_mask, std::size_t ctrl_value,
                           const TwoByTwo& m);
  cplx (*inner_product)(const cplx* a, const cplx* b, std::size_t dim);
  double (*sum_sq_mag)(const cplx* a, std::size_t dim);
};

enum class Backend { scalar, avx2 };

// True when the backend is both compiled in and supported by this CPU.
bool available(Backend b);

Backend active();

// Pins the backend for the whole process; throws std::runtime_error when the
// backend is unavailable.
void force(Backend b);

// Restores automatic selection: best available backend, unless the
// QKGE_KERNELS environment variable names one ("scalar" or "avx2").
void reset();

const KernelTable& table();
const KernelTable& table_for(Backend b);

std::string backend_name(Backend b);

}  // namespace qkge::kernels
