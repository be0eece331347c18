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

#include "duelbench/core_types.hpp"
#include "duelbench/environments.hpp"
#include "duelbench/error.hpp"

namespace duelbench {
namespace {

PreferenceMatrix ThreeCycle() {
  return PreferenceMatrix::FromRows({{0.5, 0.6, 0.4}, {0.4, 0.5, 0.6}, {0.6, 0.4, 0.5}});
}

PreferenceMatrix AllHalf(std::size_t k) {
  return PreferenceMatrix::FromUpper(k, [](std::size_t, std::size_t) { return 0.5; });
}

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

TEST(PreferenceMatrixTest, ResymmetrizesWithinTolerance) {
  const auto p = PreferenceMatrix::FromRows({{0.5, 0.7}, {0.3 + 5e-10, 0.5}});
  EXPECT_EQ(p(0, 1), 0.7);
  EXPECT_EQ(p(1, 0), 1.0 - 0.7);
  EXPECT_EQ(p(1, 1), 0.5);
}

TEST(PreferenceMatrixTest, RejectsBadInput) {
  EXPECT_EQ(KindOf([] { PreferenceMatrix::FromRows({{0.5, 0.7}, {0.8, 0.5}}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { PreferenceMatrix::FromRows({{0.5, 0.7}}); }), ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { PreferenceMatrix::FromRows({{0.5, 1.2}, {-0.2, 0.5}}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { PreferenceMatrix::FromRows({{0.4}}); }), ErrorKind::kValidation);
  EXPECT_THROW(PreferenceMatrix::FromRows({}), Error);
}

TEST(PreferenceMatrixTest, SingleRanker) {
  const auto p = PreferenceMatrix::FromRows({{0.5}});
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(CondorcetWinner(p), RankerIndex{0});
}

TEST(ComparisonMatrixTest, TotalCountsRecordedDuels) {
  ComparisonMatrix w(3);
  w.Record(0, 1);
  w.Record(1, 0);
  w.Record(2, 2);
  EXPECT_EQ(w.total(), 3u);
  EXPECT_EQ(w.compared(0, 1), 2u);
  EXPECT_EQ(w.wins(2, 2), 1u);
}

TEST(DuelOutcomeTest, Loser) {
  DuelOutcome o{1, 3, 5, 5};
  EXPECT_EQ(o.loser(), 3u);
  o.winner = 3;
  EXPECT_EQ(o.loser(), 5u);
}

TEST(CondorcetTest, Examples) {
  EXPECT_EQ(CondorcetWinner(GenerateCycle(19, 0.51, 1.0)), RankerIndex{0});
  EXPECT_FALSE(CondorcetWinner(ThreeCycle()).has_value());
  EXPECT_FALSE(CondorcetWinner(AllHalf(4)).has_value());
}

TEST(CopelandTest, CycleScores) {
  const auto scores = CopelandScores(GenerateCycle(19, 0.51, 1.0));
  ASSERT_EQ(scores.size(), 20u);
  EXPECT_EQ(scores[0], (Rational{19, 19}));
  for (std::size_t i = 1; i < 20; ++i) EXPECT_EQ(scores[i], (Rational{9, 19})) << i;
}

TEST(CopelandTest, DegenerateAndSymmetric) {
  for (const auto& s : CopelandScores(AllHalf(5))) EXPECT_EQ(s.num, 0);
  for (const auto& s : CopelandScores(ThreeCycle())) EXPECT_EQ(s, (Rational{1, 2}));
  EXPECT_EQ(KindOf([] { CopelandScores(PreferenceMatrix::FromRows({{0.5}})); }),
            ErrorKind::kDegenerateInput);
}

TEST(BordaTest, CycleDatasets) {
  const auto cycle = BordaScores(GenerateCycle(19, 0.51, 1.0));
  EXPECT_NEAR(cycle[0], 10.19, 1e-9);
  for (std::size_t i = 1; i < 20; ++i) EXPECT_NEAR(cycle[i], 9.99, 1e-9);
  const auto cycle2 = BordaScores(GenerateCycle(19, 0.6, 0.51));
  EXPECT_NEAR(cycle2[0], 11.90, 1e-9);
  for (std::size_t i = 1; i < 20; ++i) EXPECT_NEAR(cycle2[i], 9.90, 1e-9);
  for (double s : BordaScores(AllHalf(6))) EXPECT_EQ(s, 3.0);
}

TEST(StepRegretTest, Condorcet) {
  const auto p = GenerateCycle(19, 0.51, 1.0);
  const auto d = Diagnose(p);
  EXPECT_NEAR(CondorcetStepRegret(d, p, 3, 7), 0.01, 1e-12);
  EXPECT_NEAR(CondorcetStepRegret(d, p, 0, 7), 0.005, 1e-12);
  EXPECT_EQ(CondorcetStepRegret(d, p, 0, 0), 0.0);
  const auto c = ThreeCycle();
  EXPECT_EQ(KindOf([&] { CondorcetStepRegret(Diagnose(c), c, 0, 1); }),
            ErrorKind::kUnsupportedEnvironment);
}

TEST(StepRegretTest, Copeland) {
  const auto p = GenerateCycle(19, 0.51, 1.0);
  const auto d = Diagnose(p);
  EXPECT_EQ(CopelandStepRegret(d, 0, 0), 0.0);
  EXPECT_NEAR(CopelandStepRegret(d, 2, 5), 10.0 / 19.0, 1e-12);
  const auto c = ThreeCycle();
  const auto dc = Diagnose(c);
  for (RankerIndex i = 0; i < 3; ++i) {
    for (RankerIndex j = 0; j < 3; ++j) EXPECT_EQ(CopelandStepRegret(dc, i, j), 0.0);
  }
}

// Random valid matrices for the property tests below.
PreferenceMatrix RandomMatrix(std::mt19937_64& gen, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution tie(0.1);
  return PreferenceMatrix::FromUpper(k, [&](std::size_t, std::size_t) {
    return tie(gen) ? 0.5 : u(gen);
  });
}

TEST(CoreProperties, ComplementarityAndBordaSum) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + gen() % 12;
    const auto p = RandomMatrix(gen, k);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_EQ(p(i, i), 0.5);
      for (std::size_t j = 0; j < k; ++j) EXPECT_NEAR(p(i, j) + p(j, i), 1.0, 1e-9);
    }
    const auto borda = BordaScores(p);
    double sum = 0.0;
    for (double b : borda) sum += b;
    EXPECT_NEAR(sum, static_cast<double>(k * k) / 2.0, 1e-6);
  }
}

TEST(CoreProperties, CondorcetMatchesUnitCopelandScore) {
  std::mt19937_64 gen(11);
  int with_winner = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 2 + gen() % 5;
    const auto p = RandomMatrix(gen, k);
    const auto scores = CopelandScores(p);
    std::optional<RankerIndex> unit;
    for (std::size_t i = 0; i < k; ++i) {
      if (scores[i] == Rational{1, 1}) {
        EXPECT_FALSE(unit.has_value());
        unit = i;
      }
    }
    EXPECT_EQ(CondorcetWinner(p), unit);
    with_winner += unit.has_value();
  }
  EXPECT_GT(with_winner, 0);
}

TEST(CoreProperties, CondorcetRegretSymmetricAndZeroOnlyAtWinner) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> gap(0.01, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + gen() % 8;
    const RankerIndex c = gen() % k;
    std::uniform_real_distribution<double> any(0.0, 1.0);
    const auto p = PreferenceMatrix::FromUpper(k, [&](std::size_t i, std::size_t j) {
      if (i == c) return 0.5 + gap(gen);
      if (j == c) return 0.5 - gap(gen);
      return any(gen);
    });
    const auto d = Diagnose(p);
    ASSERT_EQ(d.condorcet, c);
    for (RankerIndex i = 0; i < k; ++i) {
      for (RankerIndex j = 0; j < k; ++j) {
        const double r = CondorcetStepRegret(d, p, i, j);
        EXPECT_EQ(r, CondorcetStepRegret(d, p, j, i));
        EXPECT_EQ(r == 0.0, i == c && j == c);
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 0.5);
      }
    }
  }
}

TEST(LedgerTest, CheckLedger) {
  RegretLedger ok{{{1, 0.0}, {5, 1.0}, {10, 1.0}}, std::nullopt, 10, {}};
  EXPECT_NO_THROW(CheckLedger(ok));
  RegretLedger dec = ok;
  dec.checkpoints[2].cum_regret = 0.5;
  EXPECT_THROW(CheckLedger(dec), Error);
  RegretLedger dup = ok;
  dup.checkpoints[1].step = 1;
  EXPECT_THROW(CheckLedger(dup), Error);
  RegretLedger short_tail = ok;
  short_tail.total_steps = 11;
  EXPECT_THROW(CheckLedger(short_tail), Error);
}

TEST(RunConfigTest, Validate) {
  RunConfig c;
  EXPECT_NO_THROW(c.Validate());
  EXPECT_DOUBLE_EQ(c.effective_epsilon(), 1e-6);
  c.epsilon = 1.0;
  EXPECT_THROW(c.Validate(), Error);
  c.epsilon = 0.1;
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), Error);
  c.batch_size = 4;
  c.horizon = 0;
  EXPECT_THROW(c.Validate(), Error);
  c.horizon = 1;
  c.epsilon.reset();
  EXPECT_NO_THROW(c.Validate());
}

TEST(AlgorithmNameTest, RoundTrip) {
  for (Algorithm a : {Algorithm::kMergeDts, Algorithm::kMergeRucb, Algorithm::kSelfSparring,
                      Algorithm::kDts, Algorithm::kRmed1, Algorithm::kRex3}) {
    EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  }
  EXPECT_EQ(ParseAlgorithm("Merge-DTS"), Algorithm::kMergeDts);
  EXPECT_EQ(ParseAlgorithm("self_sparring"), Algorithm::kSelfSparring);
  EXPECT_FALSE(ParseAlgorithm("ucb").has_value());
}

}  // namespace
}  // namespace duelbench
