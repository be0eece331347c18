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

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "duelbench/error.hpp"
#include "duelbench/kernels.hpp"

namespace duelbench::kernels {
namespace {

std::vector<std::uint64_t> Bits(const std::vector<double>& v) {
  std::vector<std::uint64_t> out;
  for (double x : v) out.push_back(std::bit_cast<std::uint64_t>(x));
  return out;
}

TEST(KernelsTest, ScalarUcbReference) {
  const std::vector<double> wins{1.0, 3.0, 0.0, 7.0};
  const std::vector<double> totals{4.0, 4.0, 0.0, 7.0};
  std::vector<double> out(4);
  scalar::UcbFromCounts(wins, totals, 1.0, out);
  EXPECT_DOUBLE_EQ(out[0], 0.25 + 0.5);
  EXPECT_DOUBLE_EQ(out[1], 0.75 + 0.5);
  EXPECT_EQ(out[2], 1.0);
  EXPECT_DOUBLE_EQ(out[3], 1.0 + std::sqrt(1.0 / 7.0));
}

TEST(KernelsTest, ScalarReductions) {
  const std::vector<double> v{0.7, 0.5, 0.6};
  EXPECT_FALSE(scalar::AnyBelow(v, 0.5));
  EXPECT_TRUE(scalar::AnyBelow(v, 0.55));
  std::vector<double> acc{1.0, 2.0, 3.0};
  scalar::AddDeviation(acc, v, std::vector<double>{0.5, 0.5, 0.5});
  EXPECT_DOUBLE_EQ(acc[0], 1.2);
  EXPECT_DOUBLE_EQ(acc[2], 3.1);
  std::vector<double> sq(3, 0.0);
  scalar::AddSquaredDeviation(sq, v, std::vector<double>{0.5, 0.5, 0.5});
  EXPECT_DOUBLE_EQ(sq[0], (0.7 - 0.5) * (0.7 - 0.5));
  EXPECT_EQ(sq[1], 0.0);
}

TEST(KernelsTest, DispatchFollowsActiveIsa) {
  const Isa original = ActiveIsa();
  EXPECT_TRUE(IsSupported(Isa::kScalar));
  EXPECT_EQ(DetectIsa() == Isa::kAvx2, IsSupported(Isa::kAvx2));
  SetActiveIsa(Isa::kScalar);
  EXPECT_EQ(ActiveIsa(), Isa::kScalar);
  EXPECT_STREQ(IsaName(Isa::kScalar), "scalar");
  if (!IsSupported(Isa::kAvx2)) {
    EXPECT_THROW(SetActiveIsa(Isa::kAvx2), Error);
  }
  SetActiveIsa(original);
}

#ifdef DUELBENCH_HAVE_AVX2_KERNELS

class Avx2EquivalenceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!IsSupported(Isa::kAvx2)) GTEST_SKIP() << "CPU lacks AVX2";
  }
};

TEST_F(Avx2EquivalenceTest, UcbFromCountsBitIdentical) {
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<int> count(0, 5000);
  std::uniform_real_distribution<double> log_term(0.0, 60.0);
  for (std::size_t n = 0; n < 70; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> wins(n), totals(n);
      for (std::size_t i = 0; i < n; ++i) {
        const int a = count(gen) * (gen() % 4 != 0);
        const int b = count(gen) * (gen() % 4 != 0);
        wins[i] = a;
        totals[i] = a + b;
      }
      const double alpha_log = log_term(gen);
      std::vector<double> s(n), v(n);
      scalar::UcbFromCounts(wins, totals, alpha_log, s);
      avx2::UcbFromCounts(wins, totals, alpha_log, v);
      ASSERT_EQ(Bits(s), Bits(v)) << "n=" << n;
    }
  }
}

TEST_F(Avx2EquivalenceTest, AnyBelowAgrees) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  for (std::size_t n = 0; n < 70; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> v(n);
      for (double& x : v) x = u(gen);
      if (n > 0 && rep % 3 == 0) v[gen() % n] = INFINITY;
      for (double thr : {0.3, 0.5, 0.9, 1.1}) {
        ASSERT_EQ(scalar::AnyBelow(v, thr), avx2::AnyBelow(v, thr)) << n << " " << thr;
      }
    }
  }
}

TEST_F(Avx2EquivalenceTest, ReductionsBitIdentical) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(100.0, 40.0);
  for (std::size_t n = 0; n < 70; ++n) {
    std::vector<double> x(n), ref(n), acc_s(n), acc_v(n), sq_s(n), sq_v(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = nd(gen);
      ref[i] = nd(gen);
      acc_s[i] = acc_v[i] = nd(gen);
      sq_s[i] = sq_v[i] = std::fabs(nd(gen));
    }
    scalar::AddDeviation(acc_s, x, ref);
    avx2::AddDeviation(acc_v, x, ref);
    scalar::AddSquaredDeviation(sq_s, x, ref);
    avx2::AddSquaredDeviation(sq_v, x, ref);
    ASSERT_EQ(Bits(acc_s), Bits(acc_v));
    ASSERT_EQ(Bits(sq_s), Bits(sq_v));
  }
}

#endif

}  // namespace
}  // namespace duelbench::kernels
