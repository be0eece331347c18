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

#include "duelbench/environments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duelbench/error.hpp"
#include "duelbench/io.hpp"

namespace duelbench {
namespace {

void RequireDominant(double p, const char* name) {
  if (!(p > 0.5 && p <= 1.0)) {
    std::ostringstream os;
    os << name << " must lie in (0.5, 1], got " << p;
    Fail(ErrorKind::kInvalidParameter, os.str());
  }
}

}  // namespace

PreferenceMatrix GenerateCycle(std::size_t n_suboptimal, double p_condorcet, double p_cycle) {
  if (n_suboptimal < 3 || n_suboptimal % 2 == 0) {
    Fail(ErrorKind::kDegenerateInput, "cycle needs an odd number (>= 3) of suboptimal rankers");
  }
  RequireDominant(p_condorcet, "p_condorcet");
  RequireDominant(p_cycle, "p_cycle");
  const std::size_t reach = n_suboptimal / 2;
  return PreferenceMatrix::FromUpper(n_suboptimal + 1, [&](std::size_t i, std::size_t j) {
    if (i == 0) return p_condorcet;
    // Ring positions i-1 < j-1; i beats j when j is within reach going forward.
    return j - i <= reach ? p_cycle : 1.0 - p_cycle;
  });
}

PreferenceMatrix GenerateUtility(std::span<const double> utilities) {
  if (utilities.empty()) Fail(ErrorKind::kDegenerateInput, "utility environment needs at least one ranker");
  for (double u : utilities) {
    if (!std::isfinite(u)) Fail(ErrorKind::kInvalidParameter, "utilities must be finite");
  }
  return PreferenceMatrix::FromUpper(utilities.size(), [&](std::size_t i, std::size_t j) {
    return 1.0 / (1.0 + std::exp(utilities[j] - utilities[i]));
  });
}

PreferenceMatrix LoadMatrix(const std::filesystem::path& path) {
  return ParseMatrix(ReadFile(path));
}

PreferenceMatrix BuildEnvironment(const EnvironmentSpec& spec) {
  switch (spec.kind) {
    case EnvironmentKind::kFile:
      if (spec.path.empty()) Fail(ErrorKind::kInvalidParameter, "file environment needs a path");
      return LoadMatrix(spec.path);
    case EnvironmentKind::kCycle:
      return GenerateCycle(spec.n_suboptimal, spec.p_condorcet, spec.p_cycle);
    case EnvironmentKind::kUtility:
      return GenerateUtility(spec.utilities);
  }
  Fail(ErrorKind::kInvalidParameter, "unknown environment kind");
}

DuelOutcome Duel(const PreferenceMatrix& p, RankerIndex i, RankerIndex j, RandomStream& rng,
                 std::uint64_t step) {
  if (i >= p.size() || j >= p.size()) Fail(ErrorKind::kIndexOutOfRange, "duel index out of range");
  const bool first_wins = rng.Uniform() < p(i, j);
  return DuelOutcome{step, i, j, first_wins ? i : j};
}

EnvDiagnostics Diagnose(const PreferenceMatrix& p) {
  const std::size_t k = p.size();
  EnvDiagnostics d;
  d.condorcet = CondorcetWinner(p);
  if (k >= 2) {
    d.copeland_scores = CopelandScores(p);
  } else {
    d.copeland_scores = {Rational{1, 1}};
  }
  d.copeland_value = *std::max_element(d.copeland_scores.begin(), d.copeland_scores.end());
  d.borda_scores = BordaScores(p);

  d.gaps.resize(k * k);
  for (RankerIndex i = 0; i < k; ++i) {
    for (RankerIndex j = 0; j < k; ++j) {
      const double gap = std::abs(p(i, j) - 0.5);
      d.gaps[i * k + j] = gap;
      if (i != j && gap > kProbabilityTolerance && (!d.delta_min || gap < *d.delta_min)) {
        d.delta_min = gap;
      }
    }
  }

  // A ranker is uninformative when it ties with some other ranker and beats
  // nobody.
  std::vector<bool> uninformative(k, false);
  for (RankerIndex i = 0; i < k; ++i) {
    bool ties = false;
    bool beats = false;
    for (RankerIndex j = 0; j < k; ++j) {
      if (j == i) continue;
      if (d.gaps[i * k + j] <= kProbabilityTolerance) ties = true;
      if (p(i, j) > 0.5 + kProbabilityTolerance) beats = true;
    }
    uninformative[i] = ties && !beats;
  }
  d.uninformative_count = static_cast<std::size_t>(std::count(uninformative.begin(), uninformative.end(), true));

  bool ties_explained = true;
  for (RankerIndex i = 0; i < k && ties_explained; ++i) {
    for (RankerIndex j = i + 1; j < k; ++j) {
      if (d.gaps[i * k + j] <= kProbabilityTolerance && !(uninformative[i] && uninformative[j])) {
        ties_explained = false;
        break;
      }
    }
  }
  // With two or more rankers at least one distinguishable pair must exist.
  d.assumption1_holds = ties_explained && (k == 1 || d.delta_min.has_value());
  d.assumption2_holds = 3 * d.uninformative_count <= k;
  return d;
}

}  // namespace duelbench
