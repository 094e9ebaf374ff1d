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

#include <array>
#include <cstddef>

namespace locckit::detail {

// Derivative-free pattern search on R^N: polls +/- each axis and the
// diagonals, halving the step when no poll improves. Deterministic.
template <std::size_t N, class F>
double compass_minimize(F&& f, std::array<double, N>& x, double step, double minStep,
                        int maxEvals = 20000) {
  double fx = f(x);
  int evals = 1;
  while (step >= minStep && evals < maxEvals) {
    bool improved = false;
    for (std::size_t d = 0; d < 2 * N && !improved; ++d) {
      std::array<double, N> y = x;
      y[d / 2] += (d % 2 == 0 ? step : -step);
      const double fy = f(y);
      ++evals;
      if (fy < fx) {
        x = y;
        fx = fy;
        improved = true;
      }
    }
    if constexpr (N == 2) {
      for (int s = 0; s < 4 && !improved; ++s) {
        std::array<double, N> y = x;
        y[0] += (s & 1 ? step : -step);
        y[1] += (s & 2 ? step : -step);
        const double fy = f(y);
        ++evals;
        if (fy < fx) {
          x = y;
          fx = fy;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return fx;
}

}  // namespace locckit::detail
