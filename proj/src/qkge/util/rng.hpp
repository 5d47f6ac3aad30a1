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
#include <cstdint>
#include <random>

namespace qkge {

// SplitMix64 step; used to derive independent stream seeds from a root seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const void* data, std::size_t size,
                      std::uint64_t state = 0xcbf29ce484222325ULL);

// Deterministic random stream. All distributions are implemented by hand on
// top of mt19937_64 so that a given seed yields the same values on every
// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal via the polar method; one spare value is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// One independent stream per randomized subsystem, all derived from a single
// root seed. Toggling one subsystem on or off never shifts another's stream.
struct RngPack {
  Rng init;      // parameter initialization
  Rng sampling;  // epoch shuffles and negative corruption
  Rng dropout;   // gate dropout masks
  Rng noise;     // parameter noise
  Rng shots;     // measurement-shot sampling

  static RngPack from_seed(std::uint64_t seed) {
    return RngPack{Rng(splitmix64(seed ^ 0x696e6974ULL)),
                   Rng(splitmix64(seed ^ 0x73616d70ULL)),
                   Rng(splitmix64(seed ^ 0x64726f70ULL)),
                   Rng(splitmix64(seed ^ 0x6e6f6973ULL)),
                   Rng(splitmix64(seed ^ 0x73686f74ULL))};
  }
};

}  // namespace qkge
