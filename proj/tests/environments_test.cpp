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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "duelbench/core_types.hpp"
#include "duelbench/environments.hpp"
#include "duelbench/error.hpp"
#include "duelbench/random.hpp"
#include "support.hpp"

namespace duelbench {
namespace {

// Ring built from explicit neighbour sets, independent of the generator.
std::set<std::pair<std::size_t, std::size_t>> RingWins(std::size_t n) {
  std::set<std::pair<std::size_t, std::size_t>> wins;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t d = 1; d <= n / 2; ++d) wins.insert({i, (i - 1 + d) % n + 1});
  }
  return wins;
}

void ExpectValid(const PreferenceMatrix& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p(i, i), 0.5);
    for (std::size_t j = 0; j < p.size(); ++j) {
      EXPECT_GE(p(i, j), 0.0);
      EXPECT_LE(p(i, j), 1.0);
      EXPECT_NEAR(p(i, j) + p(j, i), 1.0, 1e-9);
    }
  }
}

TEST(GenerateCycleTest, MatchesEnumeratedRing) {
  for (std::size_t n : {3u, 5u, 7u, 19u}) {
    const double pc = 0.6, py = 0.7;
    const auto p = GenerateCycle(n, pc, py);
    ASSERT_EQ(p.size(), n + 1);
    const auto wins = RingWins(n);
    for (std::size_t i = 1; i <= n; ++i) {
      EXPECT_EQ(p(0, i), pc);
      for (std::size_t j = 1; j <= n; ++j) {
        if (i == j) continue;
        const double expected = wins.contains({i, j}) ? py : 1.0 - py;
        EXPECT_DOUBLE_EQ(p(i, j), expected) << n << ":" << i << "," << j;
      }
    }
  }
}

TEST(GenerateCycleTest, SmallInstance) {
  const auto p = GenerateCycle(3, 0.6, 0.7);
  const auto scores = CopelandScores(p);
  EXPECT_EQ(scores[0], (Rational{1, 1}));
  for (std::size_t i = 1; i <= 3; ++i) {
    int beaten = 0;
    for (std::size_t j = 1; j <= 3; ++j) beaten += p(i, j) > 0.5;
    EXPECT_EQ(beaten, 1);
  }
}

TEST(GenerateCycleTest, Errors) {
  EXPECT_THROW(GenerateCycle(4, 0.6, 0.7), Error);
  EXPECT_THROW(GenerateCycle(1, 0.6, 0.7), Error);
  EXPECT_THROW(GenerateCycle(5, 0.5, 0.7), Error);
  EXPECT_THROW(GenerateCycle(5, 0.6, 0.4), Error);
  try {
    GenerateCycle(4, 0.6, 0.7);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
  try {
    GenerateCycle(5, 0.5, 0.7);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidParameter);
  }
}

TEST(GenerateCycleProperty, RandomParameters) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> prob(0.5001, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 * (1 + gen() % 15) + 1;
    const auto p = GenerateCycle(n, prob(gen), prob(gen));
    ExpectValid(p);
    const auto scores = CopelandScores(p);
    int unit = 0;
    for (const auto& s : scores) unit += s == Rational{1, 1};
    EXPECT_EQ(unit, 1);
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t beaten = 0;
      for (std::size_t j = 1; j <= n; ++j) beaten += p(i, j) > 0.5;
      EXPECT_EQ(beaten, n / 2);
    }
  }
}

TEST(GenerateUtilityTest, Examples) {
  const std::vector<double> equal{0.0, 0.0};
  const auto half = GenerateUtility(equal);
  EXPECT_EQ(half(0, 1), 0.5);
  const std::vector<double> two{1.0, 0.0};
  // 1 / (1 + e^-1) to 15 digits.
  EXPECT_NEAR(GenerateUtility(two)(0, 1), 0.731058578630005, 1e-12);
  const std::vector<double> three{3.0, 2.0, 1.0};
  EXPECT_EQ(CondorcetWinner(GenerateUtility(three)), RankerIndex{0});
  EXPECT_THROW(GenerateUtility(std::vector<double>{}), Error);
  EXPECT_THROW(GenerateUtility(std::vector<double>{0.0, NAN}), Error);
}

TEST(GenerateUtilityProperty, ValidAndMonotone) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> u(1 + gen() % 20);
    for (double& x : u) x = n(gen);
    const auto p = GenerateUtility(u);
    ExpectValid(p);
    const auto best = std::max_element(u.begin(), u.end()) - u.begin();
    if (u.size() > 1) {
      EXPECT_EQ(CondorcetWinner(p), static_cast<RankerIndex>(best));
    }
  }
}

TEST(DuelTest, DegenerateAndErrors) {
  const auto p = PreferenceMatrix::FromRows({{0.5, 1.0}, {0.0, 0.5}});
  RandomStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto o = Duel(p, 0, 1, rng, i);
    EXPECT_EQ(o.winner, 0u);
    EXPECT_EQ(o.step, static_cast<std::uint64_t>(i));
    EXPECT_EQ(Duel(p, 1, 0, rng).winner, 0u);
  }
  EXPECT_THROW(Duel(p, 0, 2, rng), Error);
}

TEST(DuelTest, MonteCarloRate) {
  const auto p = PreferenceMatrix::FromRows({{0.5, 0.51}, {0.49, 0.5}});
  RandomStream rng(2);
  const int trials = 100000;
  int wins = 0, self_first = 0;
  for (int i = 0; i < trials; ++i) {
    wins += Duel(p, 0, 1, rng).winner == 0;
    const auto self = Duel(p, 1, 1, rng);
    EXPECT_EQ(self.winner, 1u);
    self_first += self.first == self.winner;
  }
  EXPECT_NEAR(wins / double(trials), 0.51, testing::ThreeSigma(0.51, trials));
  EXPECT_EQ(self_first, trials);
}

TEST(DuelTest, SelfDuelIsFairCoin) {
  // Against itself the draw is a fair coin: a twin stream sees the same
  // single variate per duel.
  const auto p = PreferenceMatrix::FromRows({{0.5}});
  RandomStream a(9), twin(9);
  const int trials = 100000;
  int heads = 0;
  for (int i = 0; i < trials; ++i) {
    EXPECT_EQ(Duel(p, 0, 0, a).winner, 0u);
    heads += twin.Uniform() < 0.5;
  }
  EXPECT_NEAR(heads / double(trials), 0.5, testing::ThreeSigma(0.5, trials));
  EXPECT_EQ(a.Uniform(), twin.Uniform());
}

TEST(DuelTest, Deterministic) {
  const auto p = GenerateCycle(5, 0.55, 0.8);
  RandomStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const RankerIndex x = i % 6, y = (i * 7) % 6;
    EXPECT_EQ(Duel(p, x, y, a).winner, Duel(p, x, y, b).winner);
  }
}

TEST(DiagnoseTest, Examples) {
  const auto cycle = Diagnose(GenerateCycle(19, 0.51, 1.0));
  EXPECT_EQ(cycle.condorcet, RankerIndex{0});
  ASSERT_TRUE(cycle.delta_min.has_value());
  EXPECT_NEAR(*cycle.delta_min, 0.01, 1e-12);
  EXPECT_TRUE(cycle.assumption1_holds);
  EXPECT_TRUE(cycle.assumption2_holds);
  EXPECT_EQ(cycle.uninformative_count, 0u);
  EXPECT_EQ(cycle.copeland_value, (Rational{1, 1}));

  const auto half = Diagnose(PreferenceMatrix::FromUpper(5, [](auto, auto) { return 0.5; }));
  EXPECT_FALSE(half.delta_min.has_value());
  EXPECT_EQ(half.uninformative_count, 5u);
  EXPECT_FALSE(half.assumption1_holds);
  EXPECT_FALSE(half.assumption2_holds);

  const std::vector<double> u{1.0, 0.0};
  const auto util = Diagnose(GenerateUtility(u));
  EXPECT_NEAR(*util.delta_min, 0.231058578630005, 1e-12);

  const auto single = Diagnose(PreferenceMatrix::FromRows({{0.5}}));
  EXPECT_EQ(single.condorcet, RankerIndex{0});
  EXPECT_FALSE(single.delta_min.has_value());
}

TEST(DiagnoseProperty, DeltaMinIsBruteForceMinimum) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution tie(0.2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + gen() % 10;
    const auto p = PreferenceMatrix::FromUpper(k, [&](auto, auto) { return tie(gen) ? 0.5 : u(gen); });
    const auto d = Diagnose(p);
    std::optional<double> brute;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        const double g = std::fabs(p(i, j) - 0.5);
        if (g > 1e-9 && (!brute || g < *brute)) brute = g;
      }
    }
    EXPECT_EQ(d.delta_min, brute);
    if (d.delta_min) {
      EXPECT_GT(*d.delta_min, 0.0);
    }
    Rational best{0, 1};
    for (const auto& s : d.copeland_scores) best = std::max(best, s);
    if (k >= 2) {
      EXPECT_EQ(d.copeland_value, best);
    }
    if (d.condorcet && k >= 2) {
      EXPECT_EQ(d.copeland_scores[*d.condorcet], (Rational{1, 1}));
    }
  }
}

TEST(DiagnoseTest, AssumptionTwoCountsThird) {
  // Rankers 3..5 tie with each other and lose to everyone else: three
  // uninformative rankers out of nine holds, out of eight does not.
  auto build = [](std::size_t k) {
    return PreferenceMatrix::FromUpper(k, [k](std::size_t i, std::size_t j) {
      const bool ui = i >= k - 3, uj = j >= k - 3;
      if (ui && uj) return 0.5;
      if (uj) return 0.8;
      return 0.6;
    });
  };
  const auto nine = Diagnose(build(9));
  EXPECT_EQ(nine.uninformative_count, 3u);
  EXPECT_TRUE(nine.assumption1_holds);
  EXPECT_TRUE(nine.assumption2_holds);
  const auto eight = Diagnose(build(8));
  EXPECT_EQ(eight.uninformative_count, 3u);
  EXPECT_FALSE(eight.assumption2_holds);
}

TEST(BuildEnvironmentTest, Kinds) {
  EnvironmentSpec spec;
  EXPECT_EQ(BuildEnvironment(spec), GenerateCycle(19, 0.51, 1.0));
  spec.kind = EnvironmentKind::kUtility;
  spec.utilities = {0.5, 0.0};
  EXPECT_EQ(BuildEnvironment(spec).size(), 2u);
  spec.kind = EnvironmentKind::kFile;
  spec.path = "/nonexistent/matrix.txt";
  EXPECT_THROW(BuildEnvironment(spec), Error);
}

}  // namespace
}  // namespace duelbench
