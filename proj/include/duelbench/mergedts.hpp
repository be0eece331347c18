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

#ifndef DUELBENCH_MERGEDTS_HPP_
#define DUELBENCH_MERGEDTS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "duelbench/core_types.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/random.hpp"

namespace duelbench {

// Stage-indexed partition of the surviving rankers.
struct BatchSet {
  std::size_t stage = 1;
  std::vector<std::vector<RankerIndex>> batches;
  std::size_t initial_k = 0;

  // Consecutive runs of batch_size rankers; the last batch takes the rest.
  static BatchSet Initial(std::size_t k, std::size_t batch_size);

  std::size_t survivors() const;
  // All surviving rankers, ascending.
  std::vector<RankerIndex> members() const;
};

// Exploration constant C(epsilon) = ((4a - 1) K^2 / ((2a - 1) eps))^(1 / (2a - 1)).
// Requires alpha > 0.5. May be +inf for alpha close to 0.5; use LogCOfEpsilon
// when the value feeds a logarithm.
double COfEpsilon(double alpha, std::size_t k, double epsilon);
double LogCOfEpsilon(double alpha, std::size_t k, double epsilon);

// ln(t + C) from ln C without forming C.
double LogTPlusC(std::uint64_t t, double log_c);

// Full K x K upper confidence bounds
//   u_ij = w_ij / n_ij + sqrt(alpha ln(t + C) / n_ij),  n_ij = w_ij + w_ji,
// with u_ij = 1 for pairs never compared.
class UcbSnapshot {
 public:
  UcbSnapshot(std::size_t k, std::uint64_t at_step, std::vector<double> u)
      : k_(k), at_step_(at_step), u_(std::move(u)) {}

  std::size_t size() const { return k_; }
  std::uint64_t at_step() const { return at_step_; }
  double operator()(RankerIndex i, RankerIndex j) const { return u_[i * k_ + j]; }

 private:
  std::size_t k_;
  std::uint64_t at_step_;
  std::vector<double> u_;
};

UcbSnapshot UcbMatrix(const ComparisonMatrix& w, std::uint64_t t, double c, double alpha);

// The UCB block for one batch, indexed by position in the batch. The
// diagonal is +inf so row scans can ignore it. Buffers are reused between
// calls.
class UcbBlock {
 public:
  void Compute(const ComparisonMatrix& w, std::span<const RankerIndex> members, double alpha_log);

  std::size_t size() const { return members_.size(); }
  std::span<const RankerIndex> members() const { return members_; }
  double at(std::size_t a, std::size_t b) const { return values_[a * members_.size() + b]; }
  std::span<const double> row(std::size_t a) const {
    return std::span<const double>(values_).subspan(a * members_.size(), members_.size());
  }
  // u for rankers i, j of the batch (linear position lookup).
  double operator()(RankerIndex i, RankerIndex j) const;

 private:
  std::vector<RankerIndex> members_;
  std::vector<double> wins_;
  std::vector<double> totals_;
  std::vector<double> values_;
};

// Removes every ranker with u_ij < 0.5 against some current member j, judged
// on pre-removal membership, in ascending index order. The batch is never
// emptied: if every member is flagged the largest index stays. Returns the
// removed rankers, ascending.
std::vector<RankerIndex> Eliminate(std::vector<RankerIndex>& batch, const UcbSnapshot& u);
// Same rule on a block computed for exactly this batch.
std::vector<RankerIndex> Eliminate(std::vector<RankerIndex>& batch, const UcbBlock& u);

// Draws made by the two tournaments, for inspection in tests.
struct SampledPreferences {
  std::vector<RankerIndex> members;  // ascending
  std::vector<double> theta;         // members x members, theta_ii unused
  std::vector<double> kappa;
  std::vector<double> phi;
  RankerIndex first = 0;
  RankerIndex second = 0;
};

// Thompson draw theta_ij ~ Beta(w_ij + 1, w_ji + 1) for every pair i < j of the
// batch; returns the ranker beating the most others under the draw, ties
// broken uniformly.
RankerIndex SampleTournament(const ComparisonMatrix& w, std::span<const RankerIndex> batch,
                             RandomStream& rng, SampledPreferences* trace = nullptr);

// Draws phi_j ~ Beta(w_jc + 1, w_cj + 1) for j != c, fixes phi_c = 1 and returns
// the argmin, ties broken uniformly. A singleton batch returns first.
RankerIndex RelativeTournament(const ComparisonMatrix& w, std::span<const RankerIndex> batch,
                               RankerIndex first, RandomStream& rng,
                               SampledPreferences* trace = nullptr);

// Moves the single ranker of batch m to the end of batch (m + 1) mod b and
// drops batch m. Returns the new position of the receiving batch.
std::size_t MergeSingleton(BatchSet& batches, std::size_t m);

// Rebuilds the partition so batch sizes fall in [ceil(M/2), floor(3M/2)] and
// increments the stage. Batches are placed largest first into the currently
// smallest new batch that stays within the cap; oversize batches are split
// into chunks of M first, and undersized leftovers are folded into the
// smallest other batch (split in half if that overflows).
void Repartition(BatchSet& batches, std::size_t batch_size);

// Repartitions when survivors <= K / 2^stage. Returns true if it did.
bool MaybeRepartition(BatchSet& batches, std::size_t batch_size);

struct MergeParams {
  double alpha = 1.01;
  std::size_t batch_size = 4;
  double log_c = 0.0;

  // C from C(epsilon); alpha must exceed 0.5.
  static MergeParams Theoretical(double alpha, std::size_t batch_size, std::size_t k, double epsilon);
  // Explicit C, any alpha > 0.
  static MergeParams WithC(double alpha, std::size_t batch_size, double c);
};

// Chooses the duel pair inside the current batch.
class PairSelector {
 public:
  virtual ~PairSelector() = default;
  virtual std::pair<RankerIndex, RankerIndex> Select(const ComparisonMatrix& w,
                                                     std::span<const RankerIndex> batch,
                                                     const UcbBlock& u, RandomStream& rng) = 0;
};

// Shared elimination / merge / repartition loop. Subclasses differ only in
// the selector.
class MergePolicy : public DuelPolicy {
 public:
  MergePolicy(std::size_t k, MergeParams params, std::unique_ptr<PairSelector> selector,
              std::uint64_t seed);

  DuelOutcome Step(const PreferenceMatrix& env) override;
  std::optional<RankerIndex> DeclaredWinner() const override { return winner_; }
  std::vector<RankerIndex> ActiveRankers() const override { return batches_.members(); }

  const ComparisonMatrix& comparisons() const { return w_; }
  const BatchSet& batches() const { return batches_; }
  const MergeParams& params() const { return params_; }
  // Step index the next call to Step will use (starts at 1).
  std::uint64_t next_step() const { return t_; }

 private:
  void UpdateWinner();

  ComparisonMatrix w_;
  BatchSet batches_;
  MergeParams params_;
  std::unique_ptr<PairSelector> selector_;
  RandomStream rng_;
  std::uint64_t t_ = 1;
  std::optional<RankerIndex> winner_;
  UcbBlock ucb_;
};

class DoubleThompsonSelector : public PairSelector {
 public:
  std::pair<RankerIndex, RankerIndex> Select(const ComparisonMatrix& w,
                                             std::span<const RankerIndex> batch,
                                             const UcbBlock& u, RandomStream& rng) override;
};

class MergeDts : public MergePolicy {
 public:
  MergeDts(std::size_t k, MergeParams params, std::uint64_t seed)
      : MergePolicy(k, params, std::make_unique<DoubleThompsonSelector>(), seed) {}
  std::string_view name() const override { return "mergedts"; }
};

struct RegretBound {
  double high_probability = 0.0;  // 8 a M K ln(T + C) / delta_min^2
  double expected = 0.0;          // high_probability + 1
};

// C from C(epsilon). Requires alpha > 0.5 and delta_min > 0.
RegretBound TheoremBound(double alpha, std::size_t batch_size, std::size_t k, std::uint64_t horizon,
                         double epsilon, double delta_min);
// Same expression with an explicit C.
RegretBound TheoremBoundWithC(double alpha, std::size_t batch_size, std::size_t k,
                              std::uint64_t horizon, double c, double delta_min);

// 4 a ln(T + C) / delta^2: cap on comparisons between two rankers of a batch
// whose smallest gap is delta.
double LemmaComparisonCap(double alpha, std::uint64_t horizon, double c, double delta_batch_min);

}  // namespace duelbench

#endif  // DUELBENCH_MERGEDTS_HPP_
