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

#ifndef DUELBENCH_RANDOM_HPP_
#define DUELBENCH_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace duelbench {

// Per-replicate random stream. All draws made by a policy and by the
// environment during one replicate come from one instance, so a run is a
// deterministic function of its seed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // One variate in [0, 1); consumes exactly one engine output.
  double Uniform() { return uniform_(engine_); }

  // Uniform index in [0, n). Requires n >= 1.
  std::size_t UniformIndex(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  // Beta(a, b) via the ratio of two gamma variates.
  double Beta(double a, double b) {
    const double x = gamma_(engine_, GammaParam(a, 1.0));
    const double y = gamma_(engine_, GammaParam(b, 1.0));
    return x / (x + y);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  using GammaParam = std::gamma_distribution<double>::param_type;

  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  // Kept across calls: the normal generator inside caches its second variate.
  std::gamma_distribution<double> gamma_;
};

}  // namespace duelbench

#endif  // DUELBENCH_RANDOM_HPP_
