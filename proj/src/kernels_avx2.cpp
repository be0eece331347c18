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

// Compiled with -mavx2 (and without -mfma); only reached through the
// dispatcher after a CPU check.

#include <immintrin.h>

#include <cmath>

#include "duelbench/kernels.hpp"

namespace duelbench::kernels::avx2 {

void UcbFromCounts(std::span<const double> wins, std::span<const double> totals,
                   double alpha_log, std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d bonus = _mm256_set1_pd(alpha_log);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(wins.data() + i);
    const __m256d t = _mm256_loadu_pd(totals.data() + i);
    const __m256d empty = _mm256_cmp_pd(t, zero, _CMP_EQ_OQ);
    // Uncompared lanes divide by 1 and are overwritten by the blend below.
    const __m256d safe_t = _mm256_blendv_pd(t, one, empty);
    const __m256d mean = _mm256_div_pd(w, safe_t);
    const __m256d width = _mm256_sqrt_pd(_mm256_div_pd(bonus, safe_t));
    const __m256d u = _mm256_add_pd(mean, width);
    _mm256_storeu_pd(out.data() + i, _mm256_blendv_pd(u, one, empty));
  }
  for (; i < n; ++i) {
    const double t = totals[i];
    out[i] = t == 0.0 ? 1.0 : wins[i] / t + std::sqrt(alpha_log / t);
  }
}

bool AnyBelow(std::span<const double> values, double threshold) {
  const std::size_t n = values.size();
  const __m256d thr = _mm256_set1_pd(threshold);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(values.data() + i);
    if (_mm256_movemask_pd(_mm256_cmp_pd(v, thr, _CMP_LT_OQ)) != 0) return true;
  }
  for (; i < n; ++i) {
    if (values[i] < threshold) return true;
  }
  return false;
}

void AddDeviation(std::span<double> acc, std::span<const double> x, std::span<const double> ref) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(ref.data() + i));
    const __m256d a = _mm256_loadu_pd(acc.data() + i);
    _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(a, d));
  }
  for (; i < n; ++i) acc[i] += x[i] - ref[i];
}

void AddSquaredDeviation(std::span<double> acc, std::span<const double> x,
                         std::span<const double> mean) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(mean.data() + i));
    const __m256d a = _mm256_loadu_pd(acc.data() + i);
    _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(a, _mm256_mul_pd(d, d)));
  }
  for (; i < n; ++i) {
    const double d = x[i] - mean[i];
    acc[i] += d * d;
  }
}

}  // namespace duelbench::kernels::avx2
