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
//
// Reference kernels. Plain scalar code, no intrinsics; the SIMD backends are
// equivalence-tested against these.
#include "qkge/qsim/kernels.hpp"

namespace qkge::kernels {
namespace {

// Naive complex product on explicit real/imaginary parts. std::complex
// operator* is avoided in the pair loops so the reference stays free of
// libstdc++'s NaN-fixup branches.
inline cplx cmul(const cplx& a, const cplx& b) {
  return cplx(a.real() * b.real() - a.imag() * b.imag(),
              a.real() * b.imag() + a.imag() * b.real());
}

inline void update_pair(cplx& lo, cplx& hi, const TwoByTwo& m) {
  const cplx a0 = lo;
  const cplx a1 = hi;
  lo = cmul(m.m00, a0) + cmul(m.m01, a1);
  hi = cmul(m.m10, a0) + cmul(m.m11, a1);
}

void apply_2x2_scalar(cplx* amps, std::size_t dim, std::size_t stride,
                      const TwoByTwo& m) {
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      update_pair(amps[i], amps[i + stride], m);
    }
  }
}

void apply_2x2_ctrl_scalar(cplx* amps, std::size_t dim, std::size_t stride,
                           std::size_t ctrl_bit, const TwoByTwo& m) {
  if (ctrl_bit > stride) {
    // Control bit above the pair: constant across each block of pairs.
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      if ((base & ctrl_bit) == 0) continue;
      for (std::size_t i = base; i < base + stride; ++i) {
        update_pair(amps[i], amps[i + stride], m);
      }
    }
  } else {
    // Control bit below the target: selects sub-runs of length ctrl_bit.
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t run = base + ctrl_bit; run < base + stride;
           run += 2 * ctrl_bit) {
        for (std::size_t i = run; i < run + ctrl_bit; ++i) {
          update_pair(amps[i], amps[i + stride], m);
        }
      }
    }
  }
}

void apply_2x2_masked_scalar(cplx* amps, std::size_t dim, std::size_t stride,
                             std::size_t ctrl_mask, std::size_t ctrl_value,
                             const TwoByTwo& m) {
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      if ((i & ctrl_mask) == ctrl_value) {
        update_pair(amps[i], amps[i + stride], m);
      }
    }
  }
}

cplx inner_product_scalar(const cplx* a, const cplx* b, std::size_t dim) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return cplx(re, im);
}

double sum_sq_mag_scalar(const cplx* a, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

}  // namespace

extern const KernelTable kScalarKernels;
const KernelTable kScalarKernels = {
    "scalar",          apply_2x2_scalar,    apply_2x2_ctrl_scalar,
    apply_2x2_masked_scalar, inner_product_scalar, sum_sq_mag_scalar,
};

}  // namespace qkge::kernels
