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
// AVX2+FMA kernels. One __m256d holds two complex doubles laid out
// (re0, im0, re1, im1). Compiled with -mavx2 -mfma; selected at runtime only
// when the CPU reports both features.
#include "qkge/qsim/kernels.hpp"

#ifdef QKGE_HAVE_AVX2

#include <immintrin.h>

namespace qkge::kernels {
namespace {

// Multiplies both complex lanes of z by the scalar (re + i*im).
inline __m256d cmul_bcast(__m256d z, __m256d re, __m256d im) {
  const __m256d zs = _mm256_permute_pd(z, 0x5);  // (im0, re0, im1, re1)
  return _mm256_fmaddsub_pd(z, re, _mm256_mul_pd(zs, im));
}

// Updates the pair (amps[i], amps[i + stride]) two pairs at a time; the run
// [i, i + count) must be contiguous with count even.
inline void run_pairs(cplx* lo, cplx* hi, std::size_t count, __m256d re00,
                      __m256d im00, __m256d re01, __m256d im01, __m256d re10,
                      __m256d im10, __m256d re11, __m256d im11) {
  for (std::size_t k = 0; k < count; k += 2) {
    const __m256d z0 = _mm256_loadu_pd(reinterpret_cast<const double*>(lo + k));
    const __m256d z1 = _mm256_loadu_pd(reinterpret_cast<const double*>(hi + k));
    const __m256d n0 = _mm256_add_pd(cmul_bcast(z0, re00, im00),
                                     cmul_bcast(z1, re01, im01));
    const __m256d n1 = _mm256_add_pd(cmul_bcast(z0, re10, im10),
                                     cmul_bcast(z1, re11, im11));
    _mm256_storeu_pd(reinterpret_cast<double*>(lo + k), n0);
    _mm256_storeu_pd(reinterpret_cast<double*>(hi + k), n1);
  }
}

// Adjacent pair (stride 1): one register holds the whole pair (z0, z1).
// Lane pair 0 is multiplied by (m00, m01), lane pair 1 by (m10, m11).
struct PairConsts {
  __m256d re_a, im_a;  // (m00, m00, m10, m10)
  __m256d re_b, im_b;  // (m01, m01, m11, m11)
};

inline PairConsts pair_consts(const TwoByTwo& m) {
  PairConsts c;
  c.re_a = _mm256_set_pd(m.m10.real(), m.m10.real(), m.m00.real(), m.m00.real());
  c.im_a = _mm256_set_pd(m.m10.imag(), m.m10.imag(), m.m00.imag(), m.m00.imag());
  c.re_b = _mm256_set_pd(m.m11.real(), m.m11.real(), m.m01.real(), m.m01.real());
  c.im_b = _mm256_set_pd(m.m11.imag(), m.m11.imag(), m.m01.imag(), m.m01.imag());
  return c;
}

inline void adjacent_pair(cplx* p, const PairConsts& c) {
  const __m256d z = _mm256_loadu_pd(reinterpret_cast<const double*>(p));
  const __m256d zlo = _mm256_permute2f128_pd(z, z, 0x00);  // (z0, z0)
  const __m256d zhi = _mm256_permute2f128_pd(z, z, 0x11);  // (z1, z1)
  const __m256d r = _mm256_add_pd(cmul_bcast(zlo, c.re_a, c.im_a),
                                  cmul_bcast(zhi, c.re_b, c.im_b));
  _mm256_storeu_pd(reinterpret_cast<double*>(p), r);
}

struct MatConsts {
  __m256d re00, im00, re01, im01, re10, im10, re11, im11;
};

inline MatConsts mat_consts(const TwoByTwo& m) {
  MatConsts c;
  c.re00 = _mm256_set1_pd(m.m00.real());
  c.im00 = _mm256_set1_pd(m.m00.imag());
  c.re01 = _mm256_set1_pd(m.m01.real());
  c.im01 = _mm256_set1_pd(m.m01.imag());
  c.re10 = _mm256_set1_pd(m.m10.real());
  c.im10 = _mm256_set1_pd(m.m10.imag());
  c.re11 = _mm256_set1_pd(m.m11.real());
  c.im11 = _mm256_set1_pd(m.m11.imag());
  return c;
}

inline void scalar_pair(cplx& lo, cplx& hi, const TwoByTwo& m) {
  const cplx a0 = lo;
  const cplx a1 = hi;
  lo = cplx(m.m00.real() * a0.real() - m.m00.imag() * a0.imag() +
                m.m01.real() * a1.real() - m.m01.imag() * a1.imag(),
            m.m00.real() * a0.imag() + m.m00.imag() * a0.real() +
                m.m01.real() * a1.imag() + m.m01.imag() * a1.real());
  hi = cplx(m.m10.real() * a0.real() - m.m10.imag() * a0.imag() +
                m.m11.real() * a1.real() - m.m11.imag() * a1.imag(),
            m.m10.real() * a0.imag() + m.m10.imag() * a0.real() +
                m.m11.real() * a1.imag() + m.m11.imag() * a1.real());
}

void apply_2x2_avx2(cplx* amps, std::size_t dim, std::size_t stride,
                    const TwoByTwo& m) {
  if (stride == 1) {
    const PairConsts c = pair_consts(m);
    for (std::size_t i = 0; i + 1 < dim; i += 2) adjacent_pair(amps + i, c);
    return;
  }
  const MatConsts c = mat_consts(m);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    run_pairs(amps + base, amps + base + stride, stride, c.re00, c.im00,
              c.re01, c.im01, c.re10, c.im10, c.re11, c.im11);
  }
}

void apply_2x2_ctrl_avx2(cplx* amps, std::size_t dim, std::size_t stride,
                         std::size_t ctrl_bit, const TwoByTwo& m) {
  if (ctrl_bit > stride) {
    if (stride == 1) {
      const PairConsts c = pair_consts(m);
      for (std::size_t i = 0; i + 1 < dim; i += 2) {
        if (i & ctrl_bit) adjacent_pair(amps + i, c);
      }
      return;
    }
    const MatConsts c = mat_consts(m);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      if ((base & ctrl_bit) == 0) continue;
      run_pairs(amps + base, amps + base + stride, stride, c.re00, c.im00,
                c.re01, c.im01, c.re10, c.im10, c.re11, c.im11);
    }
    return;
  }
  // ctrl_bit < stride, so stride >= 2.
  if (ctrl_bit == 1) {
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t i = base + 1; i < base + stride; i += 2) {
        scalar_pair(amps[i], amps[i + stride], m);
      }
    }
    return;
  }
  const MatConsts c = mat_consts(m);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t run = base + ctrl_bit; run < base + stride;
         run += 2 * ctrl_bit) {
      run_pairs(amps + run, amps + run + stride, ctrl_bit, c.re00, c.im00,
                c.re01, c.im01, c.re10, c.im10, c.re11, c.im11);
    }
  }
}

// The masked kernel walks every pair anyway; the scalar path is kept.
void apply_2x2_masked_avx2(cplx* amps, std::size_t dim, std::size_t stride,
                           std::size_t ctrl_mask, std::size_t ctrl_value,
                           const TwoByTwo& m) {
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      if ((i & ctrl_mask) == ctrl_value) scalar_pair(amps[i], amps[i + stride], m);
    }
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_hadd_pd(s, s));
}

cplx inner_product_avx2(const cplx* a, const cplx* b, std::size_t dim) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m256d sgn = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  std::size_t i = 0;
  for (; i + 1 < dim; i += 2) {
    const __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    const __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    const __m256d vas = _mm256_permute_pd(va, 0x5);
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(vas, vb), sgn, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; i < dim; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return cplx(re, im);
}

double sum_sq_mag_avx2(const cplx* a, std::size_t dim) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 1 < dim; i += 2) {
    const __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double s = hsum(acc);
  for (; i < dim; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

}  // namespace

extern const KernelTable kAvx2Kernels;
const KernelTable kAvx2Kernels = {
    "avx2",          apply_2x2_avx2,    apply_2x2_ctrl_avx2,
    apply_2x2_masked_avx2, inner_product_avx2, sum_sq_mag_avx2,
};

}  // namespace qkge::kernels

#endif  // QKGE_HAVE_AVX2
