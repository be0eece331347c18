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

#ifndef DUELBENCH_ENVIRONMENTS_HPP_
#define DUELBENCH_ENVIRONMENTS_HPP_

#include <filesystem>
#include <span>

#include "duelbench/core_types.hpp"
#include "duelbench/random.hpp"

namespace duelbench {

// Ranker 0 beats every other ranker with p_condorcet. Rankers 1..n sit on a
// ring; each beats the n/2 rankers that follow it (ascending index, wrapping)
// with p_cycle and loses to the rest with the same probability. n must be odd
// and at least 3.
PreferenceMatrix GenerateCycle(std::size_t n_suboptimal, double p_condorcet, double p_cycle);

// Logistic link: p(i, j) = 1 / (1 + exp(u_j - u_i)).
PreferenceMatrix GenerateUtility(std::span<const double> utilities);

// Reads the text matrix format (see io.hpp).
PreferenceMatrix LoadMatrix(const std::filesystem::path& path);

PreferenceMatrix BuildEnvironment(const EnvironmentSpec& spec);

// Winner is i with probability p(i, j). Consumes one uniform variate.
DuelOutcome Duel(const PreferenceMatrix& p, RankerIndex i, RankerIndex j, RandomStream& rng,
                 std::uint64_t step = 0);

EnvDiagnostics Diagnose(const PreferenceMatrix& p);

}  // namespace duelbench

#endif  // DUELBENCH_ENVIRONMENTS_HPP_
