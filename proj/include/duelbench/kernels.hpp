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

#ifndef DUELBENCH_KERNELS_HPP_
#define DUELBENCH_KERNELS_HPP_

// Data-parallel inner loops. Every kernel has a scalar reference version and
// an AVX2 version; the two produce bit-identical results because both use
// only correctly rounded IEEE operations (no fused multiply-add). The active
// variant is chosen once at startup from CPU capabilities.

#include <cstddef>
#include <span>

namespace duelbench::kernels {

enum class Isa { kScalar, kAvx2 };

const char* IsaName(Isa isa);
bool IsSupported(Isa isa);
// Best variant this CPU supports.
Isa DetectIsa();
Isa ActiveIsa();
// Throws kInvalidParameter if the variant is not supported here.
void SetActiveIsa(Isa isa);

// out[i] = wins[i] / totals[i] + sqrt(alpha_log / totals[i]), and 1 where
// totals[i] == 0.
void UcbFromCounts(std::span<const double> wins, std::span<const double> totals,
                   double alpha_log, std::span<double> out);

// True if any values[i] < threshold.
bool AnyBelow(std::span<const double> values, double threshold);

// acc[i] += x[i] - ref[i]
void AddDeviation(std::span<double> acc, std::span<const double> x, std::span<const double> ref);

// acc[i] += (x[i] - mean[i]) * (x[i] - mean[i])
void AddSquaredDeviation(std::span<double> acc, std::span<const double> x,
                         std::span<const double> mean);

namespace scalar {
void UcbFromCounts(std::span<const double> wins, std::span<const double> totals,
                   double alpha_log, std::span<double> out);
bool AnyBelow(std::span<const double> values, double threshold);
void AddDeviation(std::span<double> acc, std::span<const double> x, std::span<const double> ref);
void AddSquaredDeviation(std::span<double> acc, std::span<const double> x,
                         std::span<const double> mean);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define DUELBENCH_HAVE_AVX2_KERNELS 1
// Callable only when IsSupported(Isa::kAvx2).
namespace avx2 {
void UcbFromCounts(std::span<const double> wins, std::span<const double> totals,
                   double alpha_log, std::span<double> out);
bool AnyBelow(std::span<const double> values, double threshold);
void AddDeviation(std::span<double> acc, std::span<const double> x, std::span<const double> ref);
void AddSquaredDeviation(std::span<double> acc, std::span<const double> x,
                         std::span<const double> mean);
}  // namespace avx2
#endif

}  // namespace duelbench::kernels

#endif  // DUELBENCH_KERNELS_HPP_
