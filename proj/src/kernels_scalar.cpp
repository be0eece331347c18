// Copyright 2026 The duelbench Authors.
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

#include <cmath>

#include "duelbench/kernels.hpp"

namespace duelbench::kernels::scalar {

void UcbFromCounts(std::span<const double> wins, std::span<const double> totals,
                   double alpha_log, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n = totals[i];
    out[i] = n == 0.0 ? 1.0 : wins[i] / n + std::sqrt(alpha_log / n);
  }
}

bool AnyBelow(std::span<const double> values, double threshold) {
  for (double v : values) {
    if (v < threshold) return true;
  }
  return false;
}

void AddDeviation(std::span<double> acc, std::span<const double> x, std::span<const double> ref) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i] - ref[i];
}

void AddSquaredDeviation(std::span<double> acc, std::span<const double> x,
                         std::span<const double> mean) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const double d = x[i] - mean[i];
    acc[i] += d * d;
  }
}

}  // namespace duelbench::kernels::scalar
