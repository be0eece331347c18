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

// Independent oracles shared by the test binaries.

#ifndef DUELBENCH_TESTS_SUPPORT_HPP_
#define DUELBENCH_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstddef>
#include <functional>

namespace duelbench::testing {

// Beta(a, b) density.
inline double BetaPdf(double x, double a, double b) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  return std::exp(log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
}

// Composite Simpson rule on [lo, hi] with n (even) panels.
inline double Simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t n = 20000) {
  const double h = (hi - lo) / static_cast<double>(n);
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < n; ++i) {
    sum += f(lo + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Regularized incomplete Beta I_x(a, b) by integrating the density.
inline double IncompleteBeta(double x, double a, double b) {
  return Simpson([&](double t) { return BetaPdf(t, a, b); }, 0.0, x);
}

// P(X < Y) for independent X ~ Beta(a1, b1), Y ~ Beta(a2, b2).
inline double ProbBetaLess(double a1, double b1, double a2, double b2) {
  return Simpson(
      [&](double x) { return BetaPdf(x, a1, b1) * (1.0 - IncompleteBeta(x, a2, b2)); }, 0.0,
      1.0, 400);
}

// Three-sigma half-width of a binomial frequency.
inline double ThreeSigma(double p, double trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / trials);
}

}  // namespace duelbench::testing

#endif  // DUELBENCH_TESTS_SUPPORT_HPP_
