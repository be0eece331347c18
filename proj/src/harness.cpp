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

#include "duelbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "duelbench/environments.hpp"
#include "duelbench/error.hpp"
#include "duelbench/kernels.hpp"
#include "duelbench/mergedts.hpp"
#include "duelbench/policy.hpp"

namespace duelbench {

RegretFunctional::RegretFunctional(RegretMode mode, const PreferenceMatrix& p,
                                   const EnvDiagnostics& diag)
    : mode_(mode), p_(&p), diag_(&diag) {
  if (mode_ == RegretMode::kAuto) {
    mode_ = diag.condorcet ? RegretMode::kCondorcet : RegretMode::kCopeland;
  }
  if (mode_ == RegretMode::kCondorcet && !diag.condorcet) {
    Fail(ErrorKind::kUnsupportedEnvironment,
         "condorcet regret requested but the environment has no condorcet winner");
  }
}

double RegretFunctional::operator()(RankerIndex i, RankerIndex j) const {
  return mode_ == RegretMode::kCondorcet ? CondorcetStepRegret(*diag_, *p_, i, j)
                                         : CopelandStepRegret(*diag_, i, j);
}

std::vector<std::uint64_t> CheckpointSchedule(std::uint64_t t_horizon, std::size_t n_points) {
  if (n_points < 2) Fail(ErrorKind::kInvalidParameter, "checkpoint schedule needs at least two points");
  if (t_horizon < n_points) Fail(ErrorKind::kInvalidParameter, "horizon shorter than checkpoint count");
  const std::uint64_t start = std::max<std::uint64_t>(1, (t_horizon + 9999) / 10000);
  std::vector<std::uint64_t> steps;
  if (t_horizon - start + 1 <= n_points) {
    for (std::uint64_t s = start; s <= t_horizon; ++s) steps.push_back(s);
    return steps;
  }
  const double log_ratio = std::log(static_cast<double>(t_horizon) / static_cast<double>(start)) /
                           static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) {
    const auto remaining = static_cast<std::uint64_t>(n_points - 1 - k);
    auto s = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(start) * std::exp(log_ratio * static_cast<double>(k))));
    if (!steps.empty()) s = std::max(s, steps.back() + 1);
    s = std::min(s, t_horizon - remaining);
    steps.push_back(s);
  }
  steps.back() = t_horizon;
  return steps;
}

RegretLedger RunReplicate(const RunConfig& config, const PreferenceMatrix& p,
                          const EnvDiagnostics& diag, std::uint64_t seed,
                          const StepObserver& observer) {
  config.Validate();
  const auto policy = MakePolicy(config, p.size(), seed);
  const RegretFunctional regret(config.regret, p, diag);

  const std::uint64_t horizon = config.horizon;
  const std::size_t points = static_cast<std::size_t>(
      std::min<std::uint64_t>(config.checkpoint_count, horizon));
  const std::vector<std::uint64_t> schedule =
      points < 2 ? std::vector<std::uint64_t>{horizon} : CheckpointSchedule(horizon, points);

  RegretLedger ledger;
  ledger.total_steps = horizon;
  ledger.checkpoints.reserve(schedule.size());
  double cumulative = 0.0;
  std::size_t next = 0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const DuelOutcome outcome = policy->Step(p);
    const double r = regret(outcome.first, outcome.second);
    cumulative += r;
    if (observer) observer(outcome, r);
    if (t == schedule[next]) {
      ledger.checkpoints.push_back(Checkpoint{t, cumulative});
      ++next;
    }
  }
  ledger.final_winner = policy->DeclaredWinner();
  ledger.survivors = policy->ActiveRankers();
  return ledger;
}

RegretLedger Run(const RunConfig& config, const PreferenceMatrix& p) {
  const EnvDiagnostics diag = Diagnose(p);
  return RunReplicate(config, p, diag, config.base_seed);
}

std::vector<RegretLedger> RunReplicates(const RunConfig& config, const PreferenceMatrix& p,
                                        std::size_t threads) {
  config.Validate();
  const EnvDiagnostics diag = Diagnose(p);
  // Surface configuration errors directly rather than per replicate.
  MakePolicy(config, p.size(), config.base_seed);
  RegretFunctional(config.regret, p, diag);

  const std::size_t n = config.replicates;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);

  std::vector<RegretLedger> ledgers(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    for (std::size_t r = cursor++; r < n; r = cursor++) {
      try {
        ledgers[r] = RunReplicate(config, p, diag, config.base_seed + r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!errors[r]) continue;
    try {
      std::rethrow_exception(errors[r]);
    } catch (const std::exception& e) {
      throw ReplicateError(r, e.what());
    }
  }
  return ledgers;
}

AggregateSeries Aggregate(std::span<const RegretLedger> ledgers) {
  if (ledgers.empty()) Fail(ErrorKind::kInvalidParameter, "nothing to aggregate");
  const auto& reference = ledgers.front().checkpoints;
  const std::size_t width = reference.size();
  AggregateSeries series;
  series.n = ledgers.size();
  series.checkpoints.resize(width);
  std::vector<double> base(width);
  for (std::size_t c = 0; c < width; ++c) {
    series.checkpoints[c] = reference[c].step;
    base[c] = reference[c].cum_regret;
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(ledgers.size());
  for (const auto& ledger : ledgers) {
    const auto& cps = ledger.checkpoints;
    if (cps.size() != width) Fail(ErrorKind::kValidation, "ledgers use different checkpoint schedules");
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (cps[c].step != series.checkpoints[c]) {
        Fail(ErrorKind::kValidation, "ledgers use different checkpoint schedules");
      }
      row[c] = cps[c].cum_regret;
    }
    rows.push_back(std::move(row));
  }

  // Mean as base + mean deviation from the first ledger: exact for identical
  // ledgers and well conditioned otherwise.
  std::vector<double> shift(width, 0.0);
  for (const auto& row : rows) kernels::AddDeviation(shift, row, base);
  series.mean.resize(width);
  const double n = static_cast<double>(series.n);
  for (std::size_t c = 0; c < width; ++c) series.mean[c] = base[c] + shift[c] / n;

  std::vector<double> squares(width, 0.0);
  for (const auto& row : rows) kernels::AddSquaredDeviation(squares, row, series.mean);
  series.stderr_.assign(width, 0.0);
  if (series.n > 1) {
    for (std::size_t c = 0; c < width; ++c) {
      series.stderr_[c] = std::sqrt(squares[c] / (n - 1.0)) / std::sqrt(n);
    }
  }
  return series;
}

BoundAuditReport BoundAudit(const RunConfig& config, std::span<const RegretLedger> ledgers,
                            const EnvDiagnostics& diag, std::size_t k) {
  BoundAuditReport report;
  report.within.assign(ledgers.size(), false);
  if (!(config.alpha > 0.5)) {
    report.note = "bound not applicable: alpha <= 0.5 is outside the guaranteed regime";
    return report;
  }
  if (!diag.condorcet) {
    report.note = "bound not applicable: no condorcet winner";
    return report;
  }
  const double epsilon = config.effective_epsilon();
  report.allowed_violations = static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(ledgers.size()))) + 1;
  if (!diag.delta_min) {
    // Only one ranker or no distinguishable pair: regret must be identically zero.
    report.applicable = true;
    report.note = "no distinguishable pair; every final regret must be zero";
    for (std::size_t i = 0; i < ledgers.size(); ++i) {
      report.within[i] = ledgers[i].final_regret() == 0.0;
      if (!report.within[i]) ++report.violations;
    }
    report.pass = report.violations <= report.allowed_violations;
    return report;
  }
  const RegretBound bound =
      TheoremBound(config.alpha, config.batch_size, k, config.horizon, epsilon, *diag.delta_min);
  report.applicable = true;
  report.bound = bound.high_probability;
  report.expected_bound = bound.expected;
  for (std::size_t i = 0; i < ledgers.size(); ++i) {
    report.within[i] = ledgers[i].final_regret() < report.bound;
    if (!report.within[i]) ++report.violations;
  }
  report.pass = report.violations <= report.allowed_violations;
  return report;
}

}  // namespace duelbench
