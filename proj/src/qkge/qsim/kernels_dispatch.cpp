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
#include "qkge/qsim/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace qkge::kernels {

extern const KernelTable kScalarKernels;
#ifdef QKGE_HAVE_AVX2
extern const KernelTable kAvx2Kernels;
#endif

namespace {

Backend g_backend = Backend::scalar;
const KernelTable* g_table = nullptr;

bool cpu_has_avx2() {
#ifdef QKGE_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void activate(Backend b) {
  g_backend = b;
#ifdef QKGE_HAVE_AVX2
  g_table = (b == Backend::avx2) ? &kAvx2Kernels : &kScalarKernels;
#else
  g_table = &kScalarKernels;
#endif
}

Backend auto_select() {
  if (const char* env = std::getenv("QKGE_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (available(Backend::avx2)) return Backend::avx2;
      std::fprintf(stderr,
                   "qkge: QKGE_KERNELS=avx2 requested but unavailable; "
                   "using scalar kernels\n");
      return Backend::scalar;
    }
    std::fprintf(stderr, "qkge: unknown QKGE_KERNELS value '%s' ignored\n", env);
  }
  return available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

void ensure_init() {
  if (g_table == nullptr) activate(auto_select());
}

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Backend active() {
  ensure_init();
  return g_backend;
}

void force(Backend b) {
  if (!available(b)) {
    throw std::runtime_error("kernel backend '" + backend_name(b) +
                             "' is not available on this machine");
  }
  activate(b);
}

void reset() { activate(auto_select()); }

const KernelTable& table() {
  ensure_init();
  return *g_table;
}

const KernelTable& table_for(Backend b) {
  if (!available(b)) {
    throw std::runtime_error("kernel backend '" + backend_name(b) +
                             "' is not available on this machine");
  }
#ifdef QKGE_HAVE_AVX2
  if (b == Backend::avx2) return kAvx2Kernels;
#endif
  return kScalarKernels;
}

std::string backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace qkge::kernels
