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

#include "duelbench/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <thread>

#include "duelbench/environments.hpp"
#include "duelbench/error.hpp"
#include "duelbench/harness.hpp"
#include "duelbench/io.hpp"
#include "duelbench/kernels.hpp"

namespace duelbench {
namespace {

// Raised for malformed flag values; maps to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Fn>
auto AsUsage(const std::string& flag, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// Flags shared by run and bound. Strings are parsed after CLI11 so values
// like 0.8^6 are accepted.
struct RunFlags {
  std::string config;
  std::string seed;
  std::string replicates;
  std::string horizon;
  std::string alpha;
  std::string batch_size;
  std::string epsilon;
  std::string c_override;
  std::string algorithm;
  std::string checkpoints;
  std::string threads;
  std::string regret;
  std::string env_path;
  std::string env_kind;
  std::string suboptimal;
  std::string p_condorcet;
  std::string p_cycle;
  std::string utilities;

  void Register(CLI::App& cmd) {
    cmd.add_option("--config", config, "key = value configuration file")->check(CLI::ExistingFile);
    cmd.add_option("--seed", seed, "base seed (u64)");
    cmd.add_option("--replicates", replicates, "number of replicates");
    cmd.add_option("--horizon", horizon, "steps per replicate (T)");
    cmd.add_option("--alpha", alpha, "exploration parameter");
    cmd.add_option("--batch-size", batch_size, "batch size M");
    cmd.add_option("--epsilon", epsilon, "failure probability (default 1/T)");
    cmd.add_option("--c-override", c_override, "use this C instead of C(epsilon)");
    cmd.add_option("--algorithm", algorithm, "mergedts | mergerucb | selfsparring");
    cmd.add_option("--checkpoints", checkpoints, "checkpoints per replicate");
    cmd.add_option("--threads", threads, "replicate concurrency (default: cores, or DUELBENCH_THREADS)");
    cmd.add_option("--regret", regret, "auto | condorcet | copeland");
    cmd.add_option("--env", env_path, "preference matrix file")->check(CLI::ExistingFile);
    cmd.add_option("--env-kind", env_kind, "file | cycle | utility");
    cmd.add_option("--suboptimal", suboptimal, "cycle: number of suboptimal rankers");
    cmd.add_option("--p-condorcet", p_condorcet, "cycle: winner's probability of beating others");
    cmd.add_option("--p-cycle", p_cycle, "cycle: probability along the ring");
    cmd.add_option("--utilities", utilities, "utility: comma-separated utilities");
  }

  RunConfig Resolve() const {
    RunConfig config;
    if (!this->config.empty()) ApplyConfig(ParseConfig(ReadFile(this->config)), config);
    ConfigMap overrides;
    const auto put = [&](const char* key, const std::string& value) {
      if (!value.empty()) overrides[key] = value;
    };
    if (!algorithm.empty() && !ParseAlgorithm(algorithm)) {
      throw UsageError("--algorithm: unknown algorithm '" + algorithm + "'");
    }
    put("algorithm", algorithm);
    put("seed", seed);
    put("replicates", replicates);
    put("horizon", horizon);
    put("alpha", alpha);
    put("batch_size", batch_size);
    put("epsilon", epsilon);
    put("c_override", c_override);
    put("checkpoints", checkpoints);
    put("regret", regret);
    put("env.kind", env_kind);
    put("env.suboptimal", suboptimal);
    put("env.p_condorcet", p_condorcet);
    put("env.p_cycle", p_cycle);
    put("env.utilities", utilities);
    if (!env_path.empty()) {
      overrides["env.kind"] = "file";
      overrides["env.path"] = env_path;
    }
    AsUsage("flags", [&] {
      ApplyConfig(overrides, config);
      return 0;
    });
    return config;
  }

  std::size_t Threads() const {
    std::string value = threads;
    if (value.empty()) {
      if (const char* env = std::getenv("DUELBENCH_THREADS")) value = env;
    }
    if (value.empty()) return 0;
    return static_cast<std::size_t>(AsUsage("--threads", [&] { return ParseUnsigned(value); }));
  }
};

std::string Describe(const EnvDiagnostics& d, std::size_t k) {
  std::ostringstream os;
  os << "rankers: " << k << "\n";
  os << "condorcet winner: " << (d.condorcet ? std::to_string(*d.condorcet) : "none") << "\n";
  os << "copeland winners:";
  for (RankerIndex r : d.CopelandWinners()) os << ' ' << r;
  os << " (score " << d.copeland_value.num << "/" << d.copeland_value.den << ")\n";
  const auto [lo, hi] = std::minmax_element(d.borda_scores.begin(), d.borda_scores.end());
  os << "borda max: " << FormatReal(*hi, 12) << " (ranker " << (hi - d.borda_scores.begin()) << ")\n";
  os << "borda min: " << FormatReal(*lo, 12) << " (ranker " << (lo - d.borda_scores.begin()) << ")\n";
  os << "delta_min: " << (d.delta_min ? FormatReal(*d.delta_min, 12) : "undefined") << "\n";
  os << "uninformative rankers: " << d.uninformative_count << "\n";
  os << "assumption 1 (distinguishable rankers): " << (d.assumption1_holds ? "holds" : "violated") << "\n";
  os << "assumption 2 (at most a third uninformative): " << (d.assumption2_holds ? "holds" : "violated") << "\n";
  return os.str();
}

int CmdGenEnv(const std::string& kind, const std::string& suboptimal, const std::string& p_condorcet,
              const std::string& p_cycle, const std::string& utilities, const std::string& out_path,
              std::ostream& out) {
  std::optional<PreferenceMatrix> p;
  if (kind == "cycle") {
    if (suboptimal.empty() || p_condorcet.empty() || p_cycle.empty()) {
      throw UsageError("cycle needs --suboptimal, --p-condorcet and --p-cycle");
    }
    const auto n = AsUsage("--suboptimal", [&] { return ParseUnsigned(suboptimal); });
    const double pc = AsUsage("--p-condorcet", [&] { return ParseReal(p_condorcet); });
    const double py = AsUsage("--p-cycle", [&] { return ParseReal(p_cycle); });
    p = GenerateCycle(static_cast<std::size_t>(n), pc, py);
  } else if (kind == "utility") {
    if (utilities.empty()) throw UsageError("utility needs --utilities");
    const auto u = AsUsage("--utilities", [&] { return ParseRealList(utilities); });
    p = GenerateUtility(u);
  } else {
    throw UsageError("--kind must be cycle or utility");
  }
  WriteFileAtomic(out_path, FormatMatrix(*p));
  out << "wrote " << out_path << "\n" << Describe(Diagnose(*p), p->size());
  return kExitOk;
}

int CmdRun(const RunFlags& flags, const std::string& out_path, std::ostream& out) {
  const RunConfig config = flags.Resolve();
  config.Validate();
  const PreferenceMatrix p = BuildEnvironment(config.env);
  const auto start = std::chrono::steady_clock::now();
  const auto ledgers = RunReplicates(config, p, flags.Threads());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  WriteFileAtomic(out_path, FormatResultsCsv(ledgers));

  std::map<std::string, std::size_t> tally;
  for (const auto& l : ledgers) ++tally[l.final_winner ? std::to_string(*l.final_winner) : "none"];
  const AggregateSeries series = Aggregate(ledgers);
  out << "algorithm: " << AlgorithmName(config.algorithm) << "\n";
  out << "rankers: " << p.size() << ", replicates: " << config.replicates
      << ", horizon: " << config.horizon << "\n";
  out << "final-winner tally:";
  for (const auto& [who, count] : tally) out << ' ' << who << '=' << count;
  out << "\n";
  out << "mean final regret: " << FormatReal(series.mean.back(), 8) << " +- "
      << FormatReal(series.stderr_.back(), 8) << "\n";
  const double steps = static_cast<double>(config.horizon) * static_cast<double>(config.replicates);
  out << "throughput: " << FormatReal(seconds > 0 ? steps / seconds : 0.0, 6) << " steps/s ("
      << kernels::IsaName(kernels::ActiveIsa()) << " kernels)\n";
  out << "wrote " << out_path << "\n";
  return kExitOk;
}

int CmdAggregate(const std::vector<std::string>& inputs, const std::string& out_path,
                 std::ostream& out) {
  if (inputs.empty()) throw UsageError("aggregate needs at least one results file");
  std::vector<RegretLedger> ledgers;
  for (const auto& path : inputs) {
    auto part = ParseResultsCsv(ReadFile(path));
    ledgers.insert(ledgers.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  if (ledgers.empty()) throw UsageError("results files contain no rows");
  const AggregateSeries series = Aggregate(ledgers);
  WriteFileAtomic(out_path, FormatAggregateCsv(series));
  out << "aggregated " << series.n << " ledgers over " << series.checkpoints.size()
      << " checkpoints into " << out_path << "\n";
  return kExitOk;
}

int CmdBound(const RunFlags& flags, const std::string& results, std::ostream& out,
             std::ostream& err) {
  RunConfig config = flags.Resolve();
  auto ledgers = ParseResultsCsv(ReadFile(results));
  if (ledgers.empty()) throw UsageError("results file contains no rows");
  if (flags.horizon.empty() && (flags.config.empty() ||
                                !ParseConfig(ReadFile(flags.config)).contains("horizon"))) {
    config.horizon = ledgers.front().total_steps;
  }
  config.Validate();
  const PreferenceMatrix p = LoadMatrix(flags.env_path);
  const EnvDiagnostics diag = Diagnose(p);
  const BoundAuditReport report = BoundAudit(config, ledgers, diag, p.size());
  if (!report.applicable) {
    err << "warning: " << report.note << "\n";
    out << "bound not applicable\n";
    return kExitOk;
  }
  if (!report.note.empty()) out << "note: " << report.note << "\n";
  out << "bound: " << FormatReal(report.bound, 10) << "\n";
  out << "expected-regret bound: " << FormatReal(report.expected_bound, 10) << "\n";
  for (std::size_t r = 0; r < ledgers.size(); ++r) {
    out << "replicate " << r << ": final regret " << FormatReal(ledgers[r].final_regret(), 10)
        << (report.within[r] ? " within bound" : " VIOLATES bound") << "\n";
  }
  out << "verdict: " << (report.pass ? "PASS" : "FAIL") << " (" << report.violations
      << " violations, " << report.allowed_violations << " allowed)\n";
  return kExitOk;
}

int CmdValidateEnv(const std::string& path, std::ostream& out) {
  const PreferenceMatrix p = LoadMatrix(path);
  out << Describe(Diagnose(p), p.size());
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dueling-bandit experiments: environments, policies, regret, bounds", "duelbench"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-env", "write a synthetic preference matrix");
  std::string kind, suboptimal, p_condorcet, p_cycle, utilities, gen_out;
  gen->add_option("--kind", kind, "cycle | utility")->required();
  gen->add_option("--suboptimal", suboptimal, "cycle: odd number of suboptimal rankers");
  gen->add_option("--p-condorcet", p_condorcet, "cycle: winner beats all others with this probability");
  gen->add_option("--p-cycle", p_cycle, "cycle: probability along the ring");
  gen->add_option("--utilities", utilities, "utility: comma-separated utilities");
  gen->add_option("--out", gen_out, "output matrix file")->required();

  auto* run = app.add_subcommand("run", "run seeded replicates and write a results CSV");
  RunFlags run_flags;
  run_flags.Register(*run);
  std::string run_out;
  run->add_option("--out", run_out, "results CSV")->required();

  auto* agg = app.add_subcommand("aggregate", "mean and standard error per checkpoint");
  std::vector<std::string> agg_inputs;
  std::string agg_out;
  agg->add_option("inputs", agg_inputs, "results CSV files")->check(CLI::ExistingFile);
  agg->add_option("--out", agg_out, "aggregate CSV")->required();

  auto* bound = app.add_subcommand("bound", "audit final regrets against the high-probability bound");
  RunFlags bound_flags;
  bound_flags.Register(*bound);
  std::string bound_results;
  bound->add_option("--results", bound_results, "results CSV")->required()->check(CLI::ExistingFile);
  bound->get_option("--env")->required();

  auto* validate = app.add_subcommand("validate-env", "check a matrix file and print diagnostics");
  std::string validate_path;
  validate->add_option("--env,env", validate_path, "preference matrix file")
      ->required()
      ->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (*gen) return CmdGenEnv(kind, suboptimal, p_condorcet, p_cycle, utilities, gen_out, out);
    if (*run) return CmdRun(run_flags, run_out, out);
    if (*agg) return CmdAggregate(agg_inputs, agg_out, out);
    if (*bound) return CmdBound(bound_flags, bound_results, out, err);
    if (*validate) return CmdValidateEnv(validate_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ReplicateError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const Error& e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::kIo ? kExitRuntime : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace duelbench
