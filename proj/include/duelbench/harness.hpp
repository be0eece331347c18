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

#ifndef DUELBENCH_HARNESS_HPP_
#define DUELBENCH_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "duelbench/core_types.hpp"

namespace duelbench {

struct AggregateSeries {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> mean;
  std::vector<double> stderr_;  // sample sd (n - 1 denominator) / sqrt(n)
  std::size_t n = 0;
};

// Per-step regret against the Condorcet winner or the Copeland winners.
class RegretFunctional {
 public:
  // kAuto picks Condorcet when the environment has a Condorcet winner.
  RegretFunctional(RegretMode mode, const PreferenceMatrix& p, const EnvDiagnostics& diag);

  double operator()(RankerIndex i, RankerIndex j) const;
  RegretMode mode() const { return mode_; }

 private:
  RegretMode mode_;
  const PreferenceMatrix* p_;
  const EnvDiagnostics* diag_;
};

// Up to n_points distinct steps, roughly geometric from
// max(1, ceil(t_horizon / 1e4)) to t_horizon inclusive.
std::vector<std::uint64_t> CheckpointSchedule(std::uint64_t t_horizon, std::size_t n_points);

// Called after every step with the duel and the regret it incurred.
using StepObserver = std::function<void(const DuelOutcome&, double)>;

// One replicate of config.algorithm on p, seeded with `seed`.
RegretLedger RunReplicate(const RunConfig& config, const PreferenceMatrix& p,
                          const EnvDiagnostics& diag, std::uint64_t seed,
                          const StepObserver& observer = {});

// Single run seeded with config.base_seed.
RegretLedger Run(const RunConfig& config, const PreferenceMatrix& p);

class ReplicateError : public std::runtime_error {
 public:
  ReplicateError(std::size_t replicate, const std::string& what)
      : std::runtime_error("replicate " + std::to_string(replicate) + ": " + what),
        replicate_(replicate) {}
  std::size_t replicate() const { return replicate_; }

 private:
  std::size_t replicate_;
};

// Replicate r uses seed base_seed + r. threads == 0 means one per core.
// Output is ordered by replicate regardless of threads.
std::vector<RegretLedger> RunReplicates(const RunConfig& config, const PreferenceMatrix& p,
                                        std::size_t threads = 0);

AggregateSeries Aggregate(std::span<const RegretLedger> ledgers);

struct BoundAuditReport {
  bool applicable = false;
  std::string note;
  double bound = 0.0;
  double expected_bound = 0.0;
  std::vector<bool> within;  // per ledger
  std::size_t violations = 0;
  std::size_t allowed_violations = 0;
  bool pass = false;
};

BoundAuditReport BoundAudit(const RunConfig& config, std::span<const RegretLedger> ledgers,
                            const EnvDiagnostics& diag, std::size_t k);

}  // namespace duelbench

#endif  // DUELBENCH_HARNESS_HPP_
