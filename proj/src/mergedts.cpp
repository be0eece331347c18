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

#include "duelbench/mergedts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duelbench/environments.hpp"
#include "duelbench/error.hpp"
#include "duelbench/kernels.hpp"

namespace duelbench {
namespace {

std::size_t BatchCap(std::size_t m) { return (3 * m) / 2; }
std::size_t BatchFloor(std::size_t m) { return (m + 1) / 2; }

RankerIndex PickTie(const std::vector<RankerIndex>& ties, RandomStream& rng) {
  return ties.size() == 1 ? ties.front() : ties[rng.UniformIndex(ties.size())];
}

std::vector<RankerIndex> ApplyElimination(std::vector<RankerIndex>& batch,
                                          const std::vector<bool>& flagged) {
  std::vector<RankerIndex> removed;
  for (std::size_t a = 0; a < batch.size(); ++a) {
    if (flagged[a]) removed.push_back(batch[a]);
  }
  std::sort(removed.begin(), removed.end());
  if (removed.size() == batch.size()) removed.pop_back();
  std::erase_if(batch, [&](RankerIndex r) {
    return std::binary_search(removed.begin(), removed.end(), r);
  });
  return removed;
}

void CheckSelectionParams(double alpha, std::size_t batch_size) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) Fail(ErrorKind::kInvalidParameter, "alpha must be positive");
  if (batch_size < 1) Fail(ErrorKind::kInvalidParameter, "batch size must be at least 1");
}

}  // namespace

BatchSet BatchSet::Initial(std::size_t k, std::size_t batch_size) {
  if (k < 1) Fail(ErrorKind::kDegenerateInput, "need at least one ranker");
  if (batch_size < 1) Fail(ErrorKind::kInvalidParameter, "batch size must be at least 1");
  BatchSet set;
  set.initial_k = k;
  for (RankerIndex start = 0; start < k; start += batch_size) {
    std::vector<RankerIndex> batch;
    for (RankerIndex r = start; r < std::min(k, start + batch_size); ++r) batch.push_back(r);
    set.batches.push_back(std::move(batch));
  }
  return set;
}

std::size_t BatchSet::survivors() const {
  std::size_t n = 0;
  for (const auto& b : batches) n += b.size();
  return n;
}

std::vector<RankerIndex> BatchSet::members() const {
  std::vector<RankerIndex> all;
  for (const auto& b : batches) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  return all;
}

double LogCOfEpsilon(double alpha, std::size_t k, double epsilon) {
  if (!(alpha > 0.5) || !std::isfinite(alpha)) {
    Fail(ErrorKind::kInvalidParameter, "C(epsilon) requires alpha > 0.5");
  }
  if (k < 1) Fail(ErrorKind::kDegenerateInput, "C(epsilon) requires at least one ranker");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) Fail(ErrorKind::kInvalidParameter, "epsilon must lie in (0, 1)");
  const double kk = static_cast<double>(k);
  return (std::log(4.0 * alpha - 1.0) + 2.0 * std::log(kk) - std::log(2.0 * alpha - 1.0) -
          std::log(epsilon)) /
         (2.0 * alpha - 1.0);
}

double COfEpsilon(double alpha, std::size_t k, double epsilon) {
  LogCOfEpsilon(alpha, k, epsilon);  // argument checks
  const double kk = static_cast<double>(k);
  return std::pow((4.0 * alpha - 1.0) * kk * kk / ((2.0 * alpha - 1.0) * epsilon),
                  1.0 / (2.0 * alpha - 1.0));
}

double LogTPlusC(std::uint64_t t, double log_c) {
  if (t == 0) return log_c;
  const double log_t = std::log(static_cast<double>(t));
  const double hi = std::max(log_t, log_c);
  const double lo = std::min(log_t, log_c);
  return hi + std::log1p(std::exp(lo - hi));
}

UcbSnapshot UcbMatrix(const ComparisonMatrix& w, std::uint64_t t, double c, double alpha) {
  if (t < 1) Fail(ErrorKind::kInvalidParameter, "ucb needs t >= 1");
  const std::size_t k = w.size();
  const double alpha_log = alpha * std::log(static_cast<double>(t) + c);
  std::vector<double> u(k * k);
  std::vector<double> wins(k);
  std::vector<double> totals(k);
  for (RankerIndex i = 0; i < k; ++i) {
    for (RankerIndex j = 0; j < k; ++j) {
      wins[j] = static_cast<double>(w.wins(i, j));
      totals[j] = static_cast<double>(w.compared(i, j));
    }
    kernels::UcbFromCounts(wins, totals, alpha_log, std::span<double>(u).subspan(i * k, k));
  }
  return UcbSnapshot(k, t, std::move(u));
}

void UcbBlock::Compute(const ComparisonMatrix& w, std::span<const RankerIndex> members,
                       double alpha_log) {
  members_.assign(members.begin(), members.end());
  const std::size_t b = members_.size();
  wins_.resize(b * b);
  totals_.resize(b * b);
  values_.resize(b * b);
  for (std::size_t a = 0; a < b; ++a) {
    for (std::size_t c = 0; c < b; ++c) {
      wins_[a * b + c] = static_cast<double>(w.wins(members_[a], members_[c]));
      totals_[a * b + c] = static_cast<double>(w.compared(members_[a], members_[c]));
    }
  }
  kernels::UcbFromCounts(wins_, totals_, alpha_log, values_);
  for (std::size_t a = 0; a < b; ++a) values_[a * b + a] = std::numeric_limits<double>::infinity();
}

double UcbBlock::operator()(RankerIndex i, RankerIndex j) const {
  const auto pos = [&](RankerIndex r) {
    const auto it = std::find(members_.begin(), members_.end(), r);
    if (it == members_.end()) Fail(ErrorKind::kContractViolation, "ranker not in ucb block");
    return static_cast<std::size_t>(it - members_.begin());
  };
  return at(pos(i), pos(j));
}

std::vector<RankerIndex> Eliminate(std::vector<RankerIndex>& batch, const UcbSnapshot& u) {
  if (batch.empty()) Fail(ErrorKind::kContractViolation, "cannot eliminate from an empty batch");
  std::vector<bool> flagged(batch.size(), false);
  for (std::size_t a = 0; a < batch.size(); ++a) {
    for (std::size_t c = 0; c < batch.size(); ++c) {
      if (a != c && u(batch[a], batch[c]) < 0.5) {
        flagged[a] = true;
        break;
      }
    }
  }
  return ApplyElimination(batch, flagged);
}

std::vector<RankerIndex> Eliminate(std::vector<RankerIndex>& batch, const UcbBlock& u) {
  if (batch.empty()) Fail(ErrorKind::kContractViolation, "cannot eliminate from an empty batch");
  if (!std::equal(batch.begin(), batch.end(), u.members().begin(), u.members().end())) {
    Fail(ErrorKind::kContractViolation, "ucb block was computed for a different batch");
  }
  std::vector<bool> flagged(batch.size(), false);
  for (std::size_t a = 0; a < batch.size(); ++a) flagged[a] = kernels::AnyBelow(u.row(a), 0.5);
  return ApplyElimination(batch, flagged);
}

RankerIndex SampleTournament(const ComparisonMatrix& w, std::span<const RankerIndex> batch,
                             RandomStream& rng, SampledPreferences* trace) {
  if (batch.empty()) Fail(ErrorKind::kContractViolation, "tournament on an empty batch");
  thread_local std::vector<RankerIndex> members;
  thread_local std::vector<int> beaten;
  thread_local std::vector<RankerIndex> ties;
  members.assign(batch.begin(), batch.end());
  std::sort(members.begin(), members.end());
  const std::size_t b = members.size();
  beaten.assign(b, 0);
  if (trace) {
    trace->members = members;
    trace->theta.assign(b * b, 0.5);
  }
  for (std::size_t a = 0; a < b; ++a) {
    for (std::size_t c = a + 1; c < b; ++c) {
      const RankerIndex i = members[a];
      const RankerIndex j = members[c];
      const double theta = rng.Beta(static_cast<double>(w.wins(i, j)) + 1.0,
                                    static_cast<double>(w.wins(j, i)) + 1.0);
      if (theta > 0.5) {
        ++beaten[a];
      } else if (1.0 - theta > 0.5) {
        ++beaten[c];
      }
      if (trace) {
        trace->theta[a * b + c] = theta;
        trace->theta[c * b + a] = 1.0 - theta;
      }
    }
  }
  const int best = *std::max_element(beaten.begin(), beaten.end());
  ties.clear();
  for (std::size_t a = 0; a < b; ++a) {
    if (beaten[a] == best) ties.push_back(members[a]);
  }
  const RankerIndex first = PickTie(ties, rng);
  if (trace) {
    trace->kappa.resize(b);
    for (std::size_t a = 0; a < b; ++a) {
      trace->kappa[a] = b == 1 ? 0.0 : static_cast<double>(beaten[a]) / static_cast<double>(b - 1);
    }
    trace->first = first;
  }
  return first;
}

RankerIndex RelativeTournament(const ComparisonMatrix& w, std::span<const RankerIndex> batch,
                               RankerIndex first, RandomStream& rng, SampledPreferences* trace) {
  if (std::find(batch.begin(), batch.end(), first) == batch.end()) {
    Fail(ErrorKind::kContractViolation, "first candidate is not in the batch");
  }
  thread_local std::vector<RankerIndex> members;
  thread_local std::vector<RankerIndex> ties;
  members.assign(batch.begin(), batch.end());
  std::sort(members.begin(), members.end());
  const std::size_t b = members.size();
  if (trace) {
    trace->members = members;
    trace->phi.assign(b, 1.0);
  }
  if (b == 1) {
    if (trace) trace->second = first;
    return first;
  }
  double lowest = std::numeric_limits<double>::infinity();
  ties.clear();
  for (std::size_t a = 0; a < b; ++a) {
    const RankerIndex j = members[a];
    double phi = 1.0;
    if (j != first) {
      phi = rng.Beta(static_cast<double>(w.wins(j, first)) + 1.0,
                     static_cast<double>(w.wins(first, j)) + 1.0);
    }
    if (trace) trace->phi[a] = phi;
    if (phi < lowest) {
      lowest = phi;
      ties.assign(1, j);
    } else if (phi == lowest) {
      ties.push_back(j);
    }
  }
  const RankerIndex second = PickTie(ties, rng);
  if (trace) trace->second = second;
  return second;
}

std::size_t MergeSingleton(BatchSet& batches, std::size_t m) {
  auto& list = batches.batches;
  if (list.size() < 2 || m >= list.size() || list[m].size() != 1) {
    Fail(ErrorKind::kContractViolation, "merge needs a singleton batch and at least two batches");
  }
  const std::size_t target = (m + 1) % list.size();
  list[target].push_back(list[m].front());
  list.erase(list.begin() + static_cast<std::ptrdiff_t>(m));
  return target > m ? target - 1 : target;
}

void Repartition(BatchSet& batches, std::size_t batch_size) {
  if (batch_size < 1) Fail(ErrorKind::kInvalidParameter, "batch size must be at least 1");
  const std::size_t cap = BatchCap(batch_size);
  const std::size_t floor = BatchFloor(batch_size);

  std::vector<std::vector<RankerIndex>> pieces;
  for (const auto& b : batches.batches) {
    if (b.empty()) continue;
    if (b.size() <= cap) {
      pieces.push_back(b);
      continue;
    }
    for (std::size_t start = 0; start < b.size(); start += batch_size) {
      const std::size_t end = std::min(b.size(), start + batch_size);
      pieces.emplace_back(b.begin() + static_cast<std::ptrdiff_t>(start),
                          b.begin() + static_cast<std::ptrdiff_t>(end));
    }
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end());
  });

  const auto smallest = [](const std::vector<std::vector<RankerIndex>>& list, std::size_t skip) {
    std::size_t best = list.size();
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i == skip) continue;
      if (best == list.size() || list[i].size() < list[best].size()) best = i;
    }
    return best;
  };

  std::vector<std::vector<RankerIndex>> rebuilt;
  for (auto& piece : pieces) {
    const std::size_t target = smallest(rebuilt, rebuilt.size());
    if (target < rebuilt.size() && rebuilt[target].size() + piece.size() <= cap) {
      rebuilt[target].insert(rebuilt[target].end(), piece.begin(), piece.end());
    } else {
      rebuilt.push_back(std::move(piece));
    }
  }

  // Fold undersized batches into their smallest neighbour.
  while (rebuilt.size() > 1) {
    const std::size_t small = smallest(rebuilt, rebuilt.size());
    if (rebuilt[small].size() >= floor) break;
    std::vector<RankerIndex> moved = std::move(rebuilt[small]);
    rebuilt.erase(rebuilt.begin() + static_cast<std::ptrdiff_t>(small));
    const std::size_t target = smallest(rebuilt, rebuilt.size());
    auto& dest = rebuilt[target];
    dest.insert(dest.end(), moved.begin(), moved.end());
    if (dest.size() > cap) {
      const std::size_t half = (dest.size() + 1) / 2;
      std::vector<RankerIndex> tail(dest.begin() + static_cast<std::ptrdiff_t>(half), dest.end());
      dest.resize(half);
      rebuilt.push_back(std::move(tail));
    }
  }

  batches.batches = std::move(rebuilt);
  ++batches.stage;
}

bool MaybeRepartition(BatchSet& batches, std::size_t batch_size) {
  const double threshold =
      static_cast<double>(batches.initial_k) / std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(batches.stage, 1000)));
  if (static_cast<double>(batches.survivors()) > threshold) return false;
  Repartition(batches, batch_size);
  return true;
}

MergeParams MergeParams::Theoretical(double alpha, std::size_t batch_size, std::size_t k,
                                     double epsilon) {
  CheckSelectionParams(alpha, batch_size);
  return MergeParams{alpha, batch_size, LogCOfEpsilon(alpha, k, epsilon)};
}

MergeParams MergeParams::WithC(double alpha, std::size_t batch_size, double c) {
  CheckSelectionParams(alpha, batch_size);
  if (!(c > 0.0) || !std::isfinite(c)) Fail(ErrorKind::kInvalidParameter, "C must be positive and finite");
  return MergeParams{alpha, batch_size, std::log(c)};
}

MergePolicy::MergePolicy(std::size_t k, MergeParams params, std::unique_ptr<PairSelector> selector,
                         std::uint64_t seed)
    : w_(k),
      batches_(BatchSet::Initial(k, params.batch_size)),
      params_(params),
      selector_(std::move(selector)),
      rng_(seed) {
  CheckSelectionParams(params_.alpha, params_.batch_size);
  UpdateWinner();
}

void MergePolicy::UpdateWinner() {
  const auto& list = batches_.batches;
  if (list.size() == 1 && list.front().size() == 1) winner_ = list.front().front();
}

DuelOutcome MergePolicy::Step(const PreferenceMatrix& env) {
  if (env.size() != w_.size()) Fail(ErrorKind::kContractViolation, "environment size mismatch");
  const std::uint64_t t = t_++;
  auto& list = batches_.batches;

  if (winner_) {
    // One ranker left: keep comparing it with itself.
    const DuelOutcome outcome = Duel(env, *winner_, *winner_, rng_, t);
    w_.Record(*winner_, *winner_);
    return outcome;
  }

  std::size_t m = static_cast<std::size_t>(t % list.size());
  const double alpha_log = params_.alpha * LogTPlusC(t, params_.log_c);
  ucb_.Compute(w_, list[m], alpha_log);
  bool changed = !Eliminate(list[m], ucb_).empty();
  if (list.size() > 1 && list[m].size() == 1) {
    m = MergeSingleton(batches_, m);
    changed = true;
  }
  if (changed) ucb_.Compute(w_, list[m], alpha_log);
  UpdateWinner();

  const auto [first, second] = selector_->Select(w_, list[m], ucb_, rng_);
  const DuelOutcome outcome = Duel(env, first, second, rng_, t);
  w_.Record(outcome.winner, outcome.loser());

  MaybeRepartition(batches_, params_.batch_size);
  UpdateWinner();
  return outcome;
}

std::pair<RankerIndex, RankerIndex> DoubleThompsonSelector::Select(
    const ComparisonMatrix& w, std::span<const RankerIndex> batch, const UcbBlock& /*u*/,
    RandomStream& rng) {
  const RankerIndex first = SampleTournament(w, batch, rng);
  const RankerIndex second = RelativeTournament(w, batch, first, rng);
  return {first, second};
}

RegretBound TheoremBoundWithC(double alpha, std::size_t batch_size, std::size_t k,
                              std::uint64_t horizon, double c, double delta_min) {
  if (!(alpha > 0.5)) Fail(ErrorKind::kInvalidParameter, "the regret bound requires alpha > 0.5");
  if (!(delta_min > 0.0)) Fail(ErrorKind::kUndefinedBound, "the regret bound needs delta_min > 0");
  if (!(c > 0.0)) Fail(ErrorKind::kInvalidParameter, "C must be positive");
  const double log_term = std::isfinite(c) ? std::log(static_cast<double>(horizon) + c)
                                           : std::numeric_limits<double>::infinity();
  const double bound = 8.0 * alpha * static_cast<double>(batch_size) * static_cast<double>(k) *
                       log_term / (delta_min * delta_min);
  return RegretBound{bound, bound + 1.0};
}

RegretBound TheoremBound(double alpha, std::size_t batch_size, std::size_t k, std::uint64_t horizon,
                         double epsilon, double delta_min) {
  if (!(alpha > 0.5)) Fail(ErrorKind::kInvalidParameter, "the regret bound requires alpha > 0.5");
  if (!(delta_min > 0.0)) Fail(ErrorKind::kUndefinedBound, "the regret bound needs delta_min > 0");
  const double log_term = LogTPlusC(horizon, LogCOfEpsilon(alpha, k, epsilon));
  const double bound = 8.0 * alpha * static_cast<double>(batch_size) * static_cast<double>(k) *
                       log_term / (delta_min * delta_min);
  return RegretBound{bound, bound + 1.0};
}

double LemmaComparisonCap(double alpha, std::uint64_t horizon, double c, double delta_batch_min) {
  if (!(delta_batch_min > 0.0)) Fail(ErrorKind::kUndefinedBound, "comparison cap needs a positive gap");
  return 4.0 * alpha * std::log(static_cast<double>(horizon) + c) /
         (delta_batch_min * delta_batch_min);
}

}  // namespace duelbench
