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

#include "duelbench/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "duelbench/error.hpp"

namespace duelbench {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kInvalidParameter: return "invalid parameter";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kUnsupportedEnvironment: return "unsupported environment";
    case ErrorKind::kUndefinedBound: return "undefined bound";
    case ErrorKind::kContractViolation: return "contract violation";
    case ErrorKind::kIndexOutOfRange: return "index out of range";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

PreferenceMatrix::PreferenceMatrix(std::size_t k, std::vector<double> p)
    : k_(k), p_(std::move(p)) {
  if (k_ == 0) Fail(ErrorKind::kDegenerateInput, "preference matrix needs at least one ranker");
}

PreferenceMatrix PreferenceMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const std::size_t k = rows.size();
  if (k == 0) Fail(ErrorKind::kValidation, "preference matrix is empty");
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i].size() != k) {
      std::ostringstream os;
      os << "row " << i << " has " << rows[i].size() << " entries, expected " << k;
      Fail(ErrorKind::kValidation, os.str());
    }
    for (std::size_t j = 0; j < k; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << v << " is not a probability";
        Fail(ErrorKind::kValidation, os.str());
      }
    }
    if (std::abs(rows[i][i] - 0.5) > kProbabilityTolerance) {
      std::ostringstream os;
      os << "diagonal entry " << i << " is " << rows[i][i] << ", expected 0.5";
      Fail(ErrorKind::kValidation, os.str());
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (std::abs(rows[i][j] + rows[j][i] - 1.0) > kProbabilityTolerance) {
        std::ostringstream os;
        os << "p(" << i << "," << j << ") + p(" << j << "," << i
           << ") = " << rows[i][j] + rows[j][i] << ", expected 1";
        Fail(ErrorKind::kValidation, os.str());
      }
    }
  }
  return FromUpper(k, [&](std::size_t i, std::size_t j) { return rows[i][j]; });
}

std::uint64_t ComparisonMatrix::total() const {
  return std::accumulate(w_.begin(), w_.end(), std::uint64_t{0});
}

std::vector<RankerIndex> EnvDiagnostics::CopelandWinners() const {
  std::vector<RankerIndex> winners;
  for (RankerIndex i = 0; i < copeland_scores.size(); ++i) {
    if (copeland_scores[i] == copeland_value) winners.push_back(i);
  }
  return winners;
}

void CheckLedger(const RegretLedger& ledger) {
  if (ledger.checkpoints.empty()) Fail(ErrorKind::kValidation, "ledger has no checkpoints");
  for (std::size_t i = 1; i < ledger.checkpoints.size(); ++i) {
    const auto& prev = ledger.checkpoints[i - 1];
    const auto& cur = ledger.checkpoints[i];
    if (cur.step <= prev.step) Fail(ErrorKind::kValidation, "ledger steps not strictly increasing");
    if (cur.cum_regret < prev.cum_regret) Fail(ErrorKind::kValidation, "ledger regret decreased");
  }
  if (ledger.checkpoints.front().cum_regret < 0.0) Fail(ErrorKind::kValidation, "negative regret");
  if (ledger.checkpoints.back().step != ledger.total_steps) {
    Fail(ErrorKind::kValidation, "last checkpoint is not the horizon");
  }
}

const char* AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMergeDts: return "mergedts";
    case Algorithm::kMergeRucb: return "mergerucb";
    case Algorithm::kSelfSparring: return "selfsparring";
    case Algorithm::kDts: return "dts";
    case Algorithm::kRmed1: return "rmed1";
    case Algorithm::kRex3: return "rex3";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(const std::string& name) {
  std::string lower;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (Algorithm a : {Algorithm::kMergeDts, Algorithm::kMergeRucb, Algorithm::kSelfSparring,
                      Algorithm::kDts, Algorithm::kRmed1, Algorithm::kRex3}) {
    if (lower == AlgorithmName(a)) return a;
  }
  return std::nullopt;
}

void RunConfig::Validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) Fail(ErrorKind::kInvalidParameter, "alpha must be positive");
  if (batch_size < 1) Fail(ErrorKind::kInvalidParameter, "batch size must be at least 1");
  if (horizon < 1) Fail(ErrorKind::kInvalidParameter, "horizon must be at least 1");
  // The default 1/T equals 1 when T == 1; the C(epsilon) formula stays finite there.
  if (epsilon && !(*epsilon > 0.0 && *epsilon < 1.0)) {
    Fail(ErrorKind::kInvalidParameter, "epsilon must lie in (0, 1)");
  }
  if (c_override && !(*c_override > 0.0)) Fail(ErrorKind::kInvalidParameter, "c override must be positive");
  if (replicates < 1) Fail(ErrorKind::kInvalidParameter, "replicates must be at least 1");
  if (checkpoint_count < 1) Fail(ErrorKind::kInvalidParameter, "checkpoint count must be at least 1");
}

std::optional<RankerIndex> CondorcetWinner(const PreferenceMatrix& p) {
  const std::size_t k = p.size();
  for (RankerIndex i = 0; i < k; ++i) {
    bool beats_all = true;
    for (RankerIndex j = 0; j < k && beats_all; ++j) {
      if (j != i && !(p(i, j) > 0.5)) beats_all = false;
    }
    if (beats_all) return i;
  }
  return std::nullopt;
}

std::vector<Rational> CopelandScores(const PreferenceMatrix& p) {
  const std::size_t k = p.size();
  if (k < 2) Fail(ErrorKind::kDegenerateInput, "copeland scores need at least two rankers");
  std::vector<Rational> scores(k);
  for (RankerIndex i = 0; i < k; ++i) {
    std::int64_t beaten = 0;
    for (RankerIndex j = 0; j < k; ++j) {
      if (j != i && p(i, j) > 0.5) ++beaten;
    }
    scores[i] = Rational{beaten, static_cast<std::int64_t>(k - 1)};
  }
  return scores;
}

std::vector<double> BordaScores(const PreferenceMatrix& p) {
  std::vector<double> scores(p.size());
  for (RankerIndex i = 0; i < p.size(); ++i) {
    const auto row = p.row(i);
    scores[i] = std::accumulate(row.begin(), row.end(), 0.0);
  }
  return scores;
}

double CondorcetStepRegret(const EnvDiagnostics& diag, const PreferenceMatrix& p,
                           RankerIndex i, RankerIndex j) {
  if (!diag.condorcet) {
    Fail(ErrorKind::kUnsupportedEnvironment,
         "condorcet regret requested for an environment without a condorcet winner");
  }
  if (i >= p.size() || j >= p.size()) Fail(ErrorKind::kIndexOutOfRange, "ranker index out of range");
  const RankerIndex c = *diag.condorcet;
  return ((p(c, i) - 0.5) + (p(c, j) - 0.5)) / 2.0;
}

double CopelandStepRegret(const EnvDiagnostics& diag, RankerIndex i, RankerIndex j) {
  if (i >= diag.copeland_scores.size() || j >= diag.copeland_scores.size()) {
    Fail(ErrorKind::kIndexOutOfRange, "ranker index out of range");
  }
  return diag.copeland_value.value() -
         0.5 * (diag.copeland_scores[i].value() + diag.copeland_scores[j].value());
}

}  // namespace duelbench
