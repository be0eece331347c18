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

#ifndef DUELBENCH_IO_HPP_
#define DUELBENCH_IO_HPP_

// Text formats shared by the CLI and the library:
//
//   matrix file     "# k=<int>" then k lines of k comma-separated decimals
//                   (12 significant digits); other '#' lines are comments.
//   results CSV     header "replicate,step,cum_regret", one row per
//                   (replicate, checkpoint).
//   aggregate CSV   header "step,mean,stderr,n".
//   config file     "key = value" per line, '#' comments.
//
// Numbers are written and read in the C locale.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "duelbench/core_types.hpp"
#include "duelbench/harness.hpp"

namespace duelbench {

std::string ReadFile(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over the target.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view content);

// Shortest representation that round-trips.
std::string FormatReal(double value);
// Fixed number of significant digits.
std::string FormatReal(double value, int significant_digits);
// Accepts plain decimals and the power form "base^exponent" (e.g. 0.8^6).
double ParseReal(std::string_view text);
std::uint64_t ParseUnsigned(std::string_view text);
std::vector<double> ParseRealList(std::string_view text);

std::string FormatMatrix(const PreferenceMatrix& p);
PreferenceMatrix ParseMatrix(std::string_view text);

std::string FormatResultsCsv(const std::vector<RegretLedger>& ledgers);
// Ledgers ordered by replicate id; total_steps is each ledger's last step.
std::vector<RegretLedger> ParseResultsCsv(std::string_view text);

std::string FormatAggregateCsv(const AggregateSeries& series);

using ConfigMap = std::map<std::string, std::string>;
ConfigMap ParseConfig(std::string_view text);
// Unknown keys and malformed values raise kParse.
void ApplyConfig(const ConfigMap& values, RunConfig& config);

}  // namespace duelbench

#endif  // DUELBENCH_IO_HPP_
