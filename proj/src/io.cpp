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

#include "duelbench/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "duelbench/error.hpp"

namespace duelbench {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

double ParsePlainReal(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Fail(ErrorKind::kParse, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string LineError(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorKind::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) Fail(ErrorKind::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    Fail(ErrorKind::kIo, "cannot move output into place at " + path.string());
  }
}

std::string FormatReal(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string FormatReal(double value, int significant_digits) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, significant_digits);
  return std::string(buf, ptr);
}

double ParseReal(std::string_view text) {
  text = Trim(text);
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return ParsePlainReal(text);
  return std::pow(ParsePlainReal(text.substr(0, caret)), ParsePlainReal(text.substr(caret + 1)));
}

std::uint64_t ParseUnsigned(std::string_view text) {
  text = Trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Fail(ErrorKind::kParse, "not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> ParseRealList(std::string_view text) {
  std::vector<double> values;
  if (Trim(text).empty()) return values;
  for (auto part : Split(text, ',')) values.push_back(ParseReal(part));
  return values;
}

std::string FormatMatrix(const PreferenceMatrix& p) {
  // The lower triangle is written as the complement of the printed upper
  // value, which is what the loader reconstructs. Files are then fixed
  // points of load + save.
  const std::size_t k = p.size();
  std::vector<std::string> cells(k * k);
  for (RankerIndex i = 0; i < k; ++i) {
    cells[i * k + i] = FormatReal(0.5, 12);
    for (RankerIndex j = i + 1; j < k; ++j) {
      cells[i * k + j] = FormatReal(p(i, j), 12);
      cells[j * k + i] = FormatReal(1.0 - ParseReal(cells[i * k + j]), 12);
    }
  }
  std::string out = "# k=" + std::to_string(k) + "\n";
  for (RankerIndex i = 0; i < k; ++i) {
    for (RankerIndex j = 0; j < k; ++j) {
      if (j) out += ',';
      out += cells[i * k + j];
    }
    out += '\n';
  }
  return out;
}

PreferenceMatrix ParseMatrix(std::string_view text) {
  std::optional<std::size_t> declared;
  std::vector<std::vector<double>> rows;
  const auto lines = Lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = Trim(lines[n]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = Trim(line.substr(1));
      if (!declared && body.starts_with("k=")) {
        try {
          declared = static_cast<std::size_t>(ParseUnsigned(body.substr(2)));
        } catch (const Error& e) {
          Fail(ErrorKind::kParse, LineError(n + 1, e.what()));
        }
      }
      continue;
    }
    std::vector<double> row;
    try {
      for (auto cell : Split(line, ',')) row.push_back(ParsePlainReal(cell));
    } catch (const Error& e) {
      Fail(ErrorKind::kParse, LineError(n + 1, e.what()));
    }
    rows.push_back(std::move(row));
  }
  if (!declared) Fail(ErrorKind::kParse, "missing '# k=<int>' header");
  if (rows.size() != *declared) {
    Fail(ErrorKind::kValidation, "header declares k=" + std::to_string(*declared) + " but found " +
                                     std::to_string(rows.size()) + " rows");
  }
  return PreferenceMatrix::FromRows(rows);
}

std::string FormatResultsCsv(const std::vector<RegretLedger>& ledgers) {
  std::string out = "replicate,step,cum_regret\n";
  for (std::size_t r = 0; r < ledgers.size(); ++r) {
    const std::string id = std::to_string(r);
    for (const auto& cp : ledgers[r].checkpoints) {
      out += id;
      out += ',';
      out += std::to_string(cp.step);
      out += ',';
      out += FormatReal(cp.cum_regret);
      out += '\n';
    }
  }
  return out;
}

std::vector<RegretLedger> ParseResultsCsv(std::string_view text) {
  const auto lines = Lines(text);
  if (lines.empty() || Trim(lines.front()) != "replicate,step,cum_regret") {
    Fail(ErrorKind::kParse, "results file must start with 'replicate,step,cum_regret'");
  }
  std::map<std::uint64_t, RegretLedger> by_id;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto line = Trim(lines[n]);
    if (line.empty()) continue;
    const auto cells = Split(line, ',');
    if (cells.size() != 3) Fail(ErrorKind::kParse, LineError(n + 1, "expected 3 columns"));
    try {
      auto& ledger = by_id[ParseUnsigned(cells[0])];
      ledger.checkpoints.push_back(Checkpoint{ParseUnsigned(cells[1]), ParsePlainReal(cells[2])});
    } catch (const Error& e) {
      Fail(ErrorKind::kParse, LineError(n + 1, e.what()));
    }
  }
  std::vector<RegretLedger> ledgers;
  for (auto& [id, ledger] : by_id) {
    ledger.total_steps = ledger.checkpoints.back().step;
    CheckLedger(ledger);
    ledgers.push_back(std::move(ledger));
  }
  return ledgers;
}

std::string FormatAggregateCsv(const AggregateSeries& series) {
  std::string out = "step,mean,stderr,n\n";
  const std::string n = std::to_string(series.n);
  for (std::size_t c = 0; c < series.checkpoints.size(); ++c) {
    out += std::to_string(series.checkpoints[c]);
    out += ',';
    out += FormatReal(series.mean[c]);
    out += ',';
    out += FormatReal(series.stderr_[c]);
    out += ',';
    out += n;
    out += '\n';
  }
  return out;
}

ConfigMap ParseConfig(std::string_view text) {
  ConfigMap values;
  const auto lines = Lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto line = lines[n];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) Fail(ErrorKind::kParse, LineError(n + 1, "expected 'key = value'"));
    const auto key = Trim(line.substr(0, eq));
    if (key.empty()) Fail(ErrorKind::kParse, LineError(n + 1, "empty key"));
    values[std::string(key)] = std::string(Trim(line.substr(eq + 1)));
  }
  return values;
}

void ApplyConfig(const ConfigMap& values, RunConfig& config) {
  for (const auto& [key, value] : values) {
    try {
      if (key == "algorithm") {
        const auto algorithm = ParseAlgorithm(value);
        if (!algorithm) Fail(ErrorKind::kParse, "unknown algorithm '" + value + "'");
        config.algorithm = *algorithm;
      } else if (key == "alpha") {
        config.alpha = ParseReal(value);
      } else if (key == "batch_size") {
        config.batch_size = static_cast<std::size_t>(ParseUnsigned(value));
      } else if (key == "horizon") {
        config.horizon = ParseUnsigned(value);
      } else if (key == "epsilon") {
        config.epsilon = ParseReal(value);
      } else if (key == "c_override") {
        config.c_override = ParseReal(value);
      } else if (key == "base_seed" || key == "seed") {
        config.base_seed = ParseUnsigned(value);
      } else if (key == "replicates") {
        config.replicates = static_cast<std::size_t>(ParseUnsigned(value));
      } else if (key == "checkpoint_count" || key == "checkpoints") {
        config.checkpoint_count = static_cast<std::size_t>(ParseUnsigned(value));
      } else if (key == "regret") {
        if (value == "auto") config.regret = RegretMode::kAuto;
        else if (value == "condorcet") config.regret = RegretMode::kCondorcet;
        else if (value == "copeland") config.regret = RegretMode::kCopeland;
        else Fail(ErrorKind::kParse, "regret must be auto, condorcet or copeland");
      } else if (key == "env.kind") {
        if (value == "file") config.env.kind = EnvironmentKind::kFile;
        else if (value == "cycle") config.env.kind = EnvironmentKind::kCycle;
        else if (value == "utility") config.env.kind = EnvironmentKind::kUtility;
        else Fail(ErrorKind::kParse, "env.kind must be file, cycle or utility");
      } else if (key == "env.path") {
        config.env.path = value;
      } else if (key == "env.suboptimal") {
        config.env.n_suboptimal = static_cast<std::size_t>(ParseUnsigned(value));
      } else if (key == "env.p_condorcet") {
        config.env.p_condorcet = ParseReal(value);
      } else if (key == "env.p_cycle") {
        config.env.p_cycle = ParseReal(value);
      } else if (key == "env.utilities") {
        config.env.utilities = ParseRealList(value);
      } else {
        Fail(ErrorKind::kParse, "unknown key");
      }
    } catch (const Error& e) {
      Fail(ErrorKind::kParse, "config key '" + key + "': " + e.what());
    }
  }
}

}  // namespace duelbench
