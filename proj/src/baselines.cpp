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

#include "duelbench/baselines.hpp"

#include "duelbench/environments.hpp"

namespace duelbench {
namespace {

RankerIndex ThompsonArgmax(const SelfSparringState& state, RandomStream& rng,
                           std::vector<RankerIndex>& ties) {
  double best = -1.0;
  ties.clear();
  for (RankerIndex i = 0; i < state.wins.size(); ++i) {
    const double theta = rng.Beta(static_cast<double>(state.wins[i]) + 1.0,
                                  static_cast<double>(state.losses[i]) + 1.0);
    if (theta > best) {
      best = theta;
      ties.assign(1, i);
    } else if (theta == best) {
      ties.push_back(i);
    }
  }
  return ties.size() == 1 ? ties.front() : ties[rng.UniformIndex(ties.size())];
}

}  // namespace

std::pair<RankerIndex, RankerIndex> MergeRucbSelector::Select(const ComparisonMatrix& /*w*/,
                                                              std::span<const RankerIndex> batch,
                                                              const UcbBlock& u,
                                                              RandomStream& rng) {
  return MergeRucbSelect(batch, u, rng);
}

std::pair<RankerIndex, RankerIndex> SelfSparringSelect(const SelfSparringState& state,
                                                       RandomStream& rng) {
  if (state.wins.empty()) Fail(ErrorKind::kDegenerateInput, "self-sparring needs at least one ranker");
  thread_local std::vector<RankerIndex> ties;
  const RankerIndex first = ThompsonArgmax(state, rng, ties);
  const RankerIndex second = ThompsonArgmax(state, rng, ties);
  return {first, second};
}

void SelfSparringUpdate(SelfSparringState& state, const DuelOutcome& outcome) {
  ++state.wins[outcome.winner];
  ++state.losses[outcome.loser()];
  ++state.t;
}

DuelOutcome SelfSparring::Step(const PreferenceMatrix& env) {
  if (env.size() != state_.wins.size()) Fail(ErrorKind::kContractViolation, "environment size mismatch");
  const auto [first, second] = SelfSparringSelect(state_, rng_);
  const DuelOutcome outcome = Duel(env, first, second, rng_, state_.t + 1);
  SelfSparringUpdate(state_, outcome);
  return outcome;
}

std::vector<RankerIndex> SelfSparring::ActiveRankers() const {
  std::vector<RankerIndex> all(state_.wins.size());
  for (RankerIndex i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

std::unique_ptr<DuelPolicy> MakePolicy(const RunConfig& config, std::size_t k, std::uint64_t seed) {
  const auto merge_params = [&] {
    return config.c_override
               ? MergeParams::WithC(config.alpha, config.batch_size, *config.c_override)
               : MergeParams::Theoretical(config.alpha, config.batch_size, k,
                                          config.effective_epsilon());
  };
  switch (config.algorithm) {
    case Algorithm::kMergeDts:
      return std::make_unique<MergeDts>(k, merge_params(), seed);
    case Algorithm::kMergeRucb:
      return std::make_unique<MergeRucb>(k, merge_params(), seed);
    case Algorithm::kSelfSparring:
      return std::make_unique<SelfSparring>(k, seed);
    case Algorithm::kDts:
    case Algorithm::kRmed1:
    case Algorithm::kRex3:
      break;
  }
  Fail(ErrorKind::kInvalidParameter,
       std::string("policy '") + AlgorithmName(config.algorithm) + "' is reserved but not implemented");
}

}  // namespace duelbench
