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

#ifndef DUELBENCH_BASELINES_HPP_
#define DUELBENCH_BASELINES_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "duelbench/core_types.hpp"
#include "duelbench/error.hpp"
#include "duelbench/mergedts.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/random.hpp"

namespace duelbench {

// MergeRUCB pair choice: the first ranker uniformly from the batch, the
// second the member j != first with the largest u_j,first (ties uniform).
// `u` is anything callable as u(i, j).
template <typename Ucb>
std::pair<RankerIndex, RankerIndex> MergeRucbSelect(std::span<const RankerIndex> batch,
                                                    const Ucb& u, RandomStream& rng);

class MergeRucbSelector : public PairSelector {
 public:
  std::pair<RankerIndex, RankerIndex> Select(const ComparisonMatrix& w,
                                             std::span<const RankerIndex> batch,
                                             const UcbBlock& u, RandomStream& rng) override;
};

class MergeRucb : public MergePolicy {
 public:
  MergeRucb(std::size_t k, MergeParams params, std::uint64_t seed)
      : MergePolicy(k, params, std::make_unique<MergeRucbSelector>(), seed) {}
  std::string_view name() const override { return "mergerucb"; }
};

// Beta posterior counts of Self-Sparring. Every duel adds one win and one
// loss; a self-duel credits both to the same ranker.
struct SelfSparringState {
  std::vector<std::uint64_t> wins;
  std::vector<std::uint64_t> losses;
  std::uint64_t t = 0;

  explicit SelfSparringState(std::size_t k) : wins(k, 0), losses(k, 0) {}
};

// Two independent Thompson rounds over all rankers; each returns the argmax
// of theta_i ~ Beta(wins_i + 1, losses_i + 1). The two picks may coincide.
std::pair<RankerIndex, RankerIndex> SelfSparringSelect(const SelfSparringState& state,
                                                       RandomStream& rng);

void SelfSparringUpdate(SelfSparringState& state, const DuelOutcome& outcome);

class SelfSparring : public DuelPolicy {
 public:
  SelfSparring(std::size_t k, std::uint64_t seed) : state_(k), rng_(seed) {}

  DuelOutcome Step(const PreferenceMatrix& env) override;
  std::optional<RankerIndex> DeclaredWinner() const override { return std::nullopt; }
  std::vector<RankerIndex> ActiveRankers() const override;
  std::string_view name() const override { return "selfsparring"; }

  const SelfSparringState& state() const { return state_; }

 private:
  SelfSparringState state_;
  RandomStream rng_;
};

template <typename Ucb>
std::pair<RankerIndex, RankerIndex> MergeRucbSelect(std::span<const RankerIndex> batch,
                                                    const Ucb& u, RandomStream& rng) {
  if (batch.empty()) Fail(ErrorKind::kContractViolation, "selection from an empty batch");
  if (batch.size() == 1) return {batch.front(), batch.front()};
  std::vector<RankerIndex> members(batch.begin(), batch.end());
  std::sort(members.begin(), members.end());
  const RankerIndex first = members[rng.UniformIndex(members.size())];
  std::vector<RankerIndex> ties;
  double best = -std::numeric_limits<double>::infinity();
  for (RankerIndex j : members) {
    if (j == first) continue;
    const double v = u(j, first);
    if (v > best) {
      best = v;
      ties.assign(1, j);
    } else if (v == best) {
      ties.push_back(j);
    }
  }
  const RankerIndex second = ties.size() == 1 ? ties.front() : ties[rng.UniformIndex(ties.size())];
  return {first, second};
}

}  // namespace duelbench

#endif  // DUELBENCH_BASELINES_HPP_
