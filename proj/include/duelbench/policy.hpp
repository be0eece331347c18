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

#ifndef DUELBENCH_POLICY_HPP_
#define DUELBENCH_POLICY_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "duelbench/core_types.hpp"

namespace duelbench {

// A dueling-bandit policy driven one duel at a time. Each instance owns its
// random stream and uses it for the environment's duel as well.
class DuelPolicy {
 public:
  virtual ~DuelPolicy() = default;

  // Chooses a pair, duels it in `env` and records the result.
  virtual DuelOutcome Step(const PreferenceMatrix& env) = 0;

  // Set once the policy has committed to a single ranker.
  virtual std::optional<RankerIndex> DeclaredWinner() const = 0;

  // Rankers the policy may still select.
  virtual std::vector<RankerIndex> ActiveRankers() const = 0;

  virtual std::string_view name() const = 0;
};

// Builds the policy named by config.algorithm for k rankers. DTS, RMED1 and
// REX3 are reserved names and raise kInvalidParameter.
std::unique_ptr<DuelPolicy> MakePolicy(const RunConfig& config, std::size_t k, std::uint64_t seed);

}  // namespace duelbench

#endif  // DUELBENCH_POLICY_HPP_
