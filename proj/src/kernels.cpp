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

#include <atomic>

#include "duelbench/error.hpp"
#include "duelbench/kernels.hpp"

namespace duelbench::kernels {
namespace {

struct Table {
  void (*ucb)(std::span<const double>, std::span<const double>, double, std::span<double>);
  bool (*any_below)(std::span<const double>, double);
  void (*add_dev)(std::span<double>, std::span<const double>, std::span<const double>);
  void (*add_sq_dev)(std::span<double>, std::span<const double>, std::span<const double>);
};

constexpr Table kScalarTable{scalar::UcbFromCounts, scalar::AnyBelow, scalar::AddDeviation,
                             scalar::AddSquaredDeviation};
#ifdef DUELBENCH_HAVE_AVX2_KERNELS
constexpr Table kAvx2Table{avx2::UcbFromCounts, avx2::AnyBelow, avx2::AddDeviation,
                           avx2::AddSquaredDeviation};
#endif

const Table& TableFor(Isa isa) {
#ifdef DUELBENCH_HAVE_AVX2_KERNELS
  if (isa == Isa::kAvx2) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

std::atomic<Isa>& Active() {
  static std::atomic<Isa> active{DetectIsa()};
  return active;
}

}  // namespace

const char* IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool IsSupported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(DUELBENCH_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa DetectIsa() { return IsSupported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

Isa ActiveIsa() { return Active().load(std::memory_order_relaxed); }

void SetActiveIsa(Isa isa) {
  if (!IsSupported(isa)) {
    Fail(ErrorKind::kInvalidParameter, std::string("kernel variant not supported: ") + IsaName(isa));
  }
  Active().store(isa, std::memory_order_relaxed);
}

void UcbFromCounts(std::span<const double> wins, std::span<const double> totals,
                   double alpha_log, std::span<double> out) {
  TableFor(ActiveIsa()).ucb(wins, totals, alpha_log, out);
}

bool AnyBelow(std::span<const double> values, double threshold) {
  return TableFor(ActiveIsa()).any_below(values, threshold);
}

void AddDeviation(std::span<double> acc, std::span<const double> x, std::span<const double> ref) {
  TableFor(ActiveIsa()).add_dev(acc, x, ref);
}

void AddSquaredDeviation(std::span<double> acc, std::span<const double> x,
                         std::span<const double> mean) {
  TableFor(ActiveIsa()).add_sq_dev(acc, x, mean);
}

}  // namespace duelbench::kernels
