// Copyright 2026 The locckit Authors
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

#include "locckit/linalg.hpp"

namespace locckit {

// Counter-based splitmix64 stream. The n-th draw depends only on (seed, n),
// so results are identical across platforms and standard libraries.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller.
  double normal();
  // Circular complex normal with E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);
// Seed for work unit `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Haar-distributed 2x2 unitary.
Mat2 haar_unitary(CounterRng& rng);
// Haar-distributed unit vector in C^2 / C^4.
Vec2 random_unit_vec2(CounterRng& rng);
Vec4 random_unit_vec4(CounterRng& rng);
// Matrix with iid complex normal entries.
Mat2 random_matrix(CounterRng& rng);

}  // namespace locckit
