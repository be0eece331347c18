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

#ifndef DUELBENCH_CORE_TYPES_HPP_
#define DUELBENCH_CORE_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace duelbench {

using RankerIndex = std::size_t;

// Absolute tolerance for complementarity checks and for deciding that a
// preference is indistinguishable from 0.5.
inline constexpr double kProbabilityTolerance = 1e-9;

// Ground-truth duel probabilities. p(i, j) is the probability that ranker i
// beats ranker j. Construction validates and re-symmetrizes, so downstream
// code may rely on p(i, j) + p(j, i) == 1 and p(i, i) == 0.5 exactly.
class PreferenceMatrix {
 public:
  // Rows must form a square matrix with entries in [0, 1], complementary
  // within kProbabilityTolerance. The upper triangle is kept and the lower
  // triangle rewritten as its complement.
  static PreferenceMatrix FromRows(const std::vector<std::vector<double>>& rows);

  // Builds a matrix from the strict upper triangle, upper(i, j) for i < j.
  template <typename UpperFn>
  static PreferenceMatrix FromUpper(std::size_t k, UpperFn&& upper) {
    std::vector<double> p(k * k, 0.5);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        p[i * k + j] = upper(i, j);
        p[j * k + i] = 1.0 - p[i * k + j];
      }
    }
    return PreferenceMatrix(k, std::move(p));
  }

  std::size_t size() const { return k_; }
  double operator()(RankerIndex i, RankerIndex j) const { return p_[i * k_ + j]; }
  std::span<const double> row(RankerIndex i) const {
    return std::span<const double>(p_).subspan(i * k_, k_);
  }
  std::span<const double> data() const { return p_; }

  friend bool operator==(const PreferenceMatrix&, const PreferenceMatrix&) = default;

 private:
  PreferenceMatrix(std::size_t k, std::vector<double> p);

  std::size_t k_ = 0;
  std::vector<double> p_;
};

// Running duel counts; wins(i, j) is how often i has beaten j. Self-duels
// land on the diagonal.
class ComparisonMatrix {
 public:
  explicit ComparisonMatrix(std::size_t k) : k_(k), w_(k * k, 0) {}

  std::size_t size() const { return k_; }
  std::uint64_t wins(RankerIndex i, RankerIndex j) const { return w_[i * k_ + j]; }
  std::uint64_t compared(RankerIndex i, RankerIndex j) const {
    return w_[i * k_ + j] + w_[j * k_ + i];
  }
  std::span<const std::uint64_t> row(RankerIndex i) const {
    return std::span<const std::uint64_t>(w_).subspan(i * k_, k_);
  }
  void Record(RankerIndex winner, RankerIndex loser) { ++w_[winner * k_ + loser]; }
  // For tests and replay; not used by the policies.
  void Set(RankerIndex i, RankerIndex j, std::uint64_t count) { w_[i * k_ + j] = count; }
  std::uint64_t total() const;

 private:
  std::size_t k_;
  std::vector<std::uint64_t> w_;
};

struct DuelOutcome {
  std::uint64_t step = 0;
  RankerIndex first = 0;
  RankerIndex second = 0;
  RankerIndex winner = 0;

  RankerIndex loser() const { return winner == first ? second : first; }
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
};

struct EnvDiagnostics {
  std::optional<RankerIndex> condorcet;
  std::vector<Rational> copeland_scores;  // {1/1} for a single ranker
  Rational copeland_value;
  std::vector<double> borda_scores;
  std::vector<double> gaps;  // row-major k x k, |p_ij - 0.5|
  std::optional<double> delta_min;
  std::size_t uninformative_count = 0;
  bool assumption1_holds = false;
  bool assumption2_holds = false;

  std::vector<RankerIndex> CopelandWinners() const;
};

struct Checkpoint {
  std::uint64_t step = 0;
  double cum_regret = 0.0;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct RegretLedger {
  std::vector<Checkpoint> checkpoints;
  std::optional<RankerIndex> final_winner;
  std::uint64_t total_steps = 0;
  // Rankers still active at the horizon, for elimination-style policies.
  std::vector<RankerIndex> survivors;

  double final_regret() const { return checkpoints.empty() ? 0.0 : checkpoints.back().cum_regret; }
  friend bool operator==(const RegretLedger&, const RegretLedger&) = default;
};

// Throws kValidation if the ledger breaks its ordering invariants.
void CheckLedger(const RegretLedger& ledger);

enum class EnvironmentKind { kFile, kCycle, kUtility };

struct EnvironmentSpec {
  EnvironmentKind kind = EnvironmentKind::kCycle;
  std::string path;
  std::size_t n_suboptimal = 19;
  double p_condorcet = 0.51;
  double p_cycle = 1.0;
  std::vector<double> utilities;
};

enum class Algorithm { kMergeDts, kMergeRucb, kSelfSparring, kDts, kRmed1, kRex3 };

const char* AlgorithmName(Algorithm algorithm);
// Returns nullopt for names that are not recognised at all.
std::optional<Algorithm> ParseAlgorithm(const std::string& name);

enum class RegretMode { kAuto, kCondorcet, kCopeland };

struct RunConfig {
  Algorithm algorithm = Algorithm::kMergeDts;
  double alpha = 1.01;
  std::size_t batch_size = 4;
  std::uint64_t horizon = 1000000;
  std::optional<double> epsilon;  // defaults to 1 / horizon
  std::optional<double> c_override;
  EnvironmentSpec env;
  std::uint64_t base_seed = 0;
  std::size_t replicates = 50;
  std::size_t checkpoint_count = 100;
  RegretMode regret = RegretMode::kAuto;

  double effective_epsilon() const {
    return epsilon ? *epsilon : 1.0 / static_cast<double>(horizon);
  }
  // Throws kInvalidParameter on out-of-range fields.
  void Validate() const;
};

// Index C with p(C, j) > 0.5 for all j != C, if one exists.
std::optional<RankerIndex> CondorcetWinner(const PreferenceMatrix& p);

// Fraction of other rankers beaten strictly. Requires k >= 2.
std::vector<Rational> CopelandScores(const PreferenceMatrix& p);

// Row sums including the diagonal 0.5.
std::vector<double> BordaScores(const PreferenceMatrix& p);

// (Delta_{C,i} + Delta_{C,j}) / 2 against the Condorcet winner C.
double CondorcetStepRegret(const EnvDiagnostics& diag, const PreferenceMatrix& p,
                           RankerIndex i, RankerIndex j);

// zeta* - (zeta_i + zeta_j) / 2.
double CopelandStepRegret(const EnvDiagnostics& diag, RankerIndex i, RankerIndex j);

}  // namespace duelbench

#endif  // DUELBENCH_CORE_TYPES_HPP_
