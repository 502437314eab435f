// Copyright 2026 The holevoft Authors
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

#include "holevoft/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "holevoft/cli/report.hpp"
#include "holevoft/cli/scenario.hpp"
#include "holevoft/errors.hpp"
#include "holevoft/optimize.hpp"
#include "holevoft/random.hpp"

namespace holevoft::cli {

using nlohmann::json;

namespace {

struct Globals {
  std::string tol_pack;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool bits = false;
};

struct Input {
  std::string role;
  std::string path;
  std::string sha256;
};

class Session {
 public:
  Session(const Globals& g, std::ostream& out) : g_(g), out_(out) {
    if (!g_.tol_pack.empty()) {
      std::string raw;
      tol_pack_ = read_json_file(g_.tol_pack, &raw);
      if (tol_pack_.is_object() && tol_pack_.contains("tolerances")) tol_pack_ = tol_pack_["tolerances"];
      apply_tolerance_overrides({}, tol_pack_);
      inputs_.push_back({"tol_pack", g_.tol_pack, sha256_hex(raw)});
    }
  }

  Scenario load(const std::string& path) {
    std::string raw;
    const json j = read_json_file(path, &raw);
    inputs_.push_back({"scenario", path, sha256_hex(raw)});
    return parse_scenario(j);
  }

  // defaults, then scenario overrides, then the tolerance pack
  Tolerances tolerances(const Scenario* s) const {
    Tolerances t;
    if (s) t = scenario_tolerances(*s, t);
    return apply_tolerance_overrides(t, tol_pack_);
  }

  std::uint64_t seed(const Scenario* s) const {
    if (g_.seed) return *g_.seed;
    if (s && s->seed) return *s->seed;
    return 0;
  }

  /// Emits the report and returns the exit code for `passed`.
  int emit(const std::string& command, const Tolerances& tol, json result, bool passed,
           const std::vector<std::pair<std::string, double>>& summary, std::optional<std::uint64_t> seed = {}) {
    json inputs = json::array();
    for (const auto& in : inputs_) inputs.push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
    json report{{"report_version", kReportVersion},
                {"command", command},
                {"inputs", inputs},
                {"units", "nats"},
                {"tolerances", tolerances_to_json(tol)},
                {"result", std::move(result)},
                {"passed", passed}};
    if (seed) report["seed"] = *seed;
    if (g_.out.empty()) {
      out_ << report.dump(2) << '\n';
    } else {
      write_file(g_.out, report.dump(2) + "\n");
      print_summary(summary, passed);
    }
    return passed ? kExitOk : kExitAssertion;
  }

  void write_file(const std::string& path, const std::string& text) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
    if (!f) throw InputError("failed writing '" + path + "'");
  }

  const Globals& globals() const { return g_; }
  std::ostream& out() { return out_; }

 private:
  // Keys ending in '*' carry information in nats and honour --bits.
  void print_summary(const std::vector<std::pair<std::string, double>>& summary, bool passed) {
    for (const auto& [key, value] : summary) {
      const bool info = !key.empty() && key.back() == '*';
      const std::string name = info ? key.substr(0, key.size() - 1) : key;
      if (info)
        out_ << fmt::format("{}: {} {}\n", name, format_double(g_.bits ? value / std::log(2.0) : value), g_.bits ? "bits" : "nats");
      else
        out_ << fmt::format("{}: {}\n", name, format_double(value));
    }
    out_ << (passed ? "all checks passed\n" : "CHECKS FAILED\n");
  }

  Globals g_;
  std::ostream& out_;
  json tol_pack_ = json::object();
  std::vector<Input> inputs_;
};

json tcp_to_json(const channel::TcpReport& r) {
  return {{"completeness_violation", r.completeness_violation},
          {"min_choi_eigenvalue", r.min_choi_eigenvalue},
          {"trace_preserving", r.trace_preserving},
          {"completely_positive", r.completely_positive}};
}

int cmd_verify(Session& s, const std::string& path) {
  const Scenario sc = s.load(path);
  const Tolerances tol = s.tolerances(&sc);
  const auto protocol = build_two_time(sc, tol);
  const auto report = ttm::verify_ft(protocol, {}, tol);
  json result = ft_report_to_json(report);
  result["channel"] = tcp_to_json(channel::validate_tcp(protocol.channel().ops(), tol));
  return s.emit("verify", tol, std::move(result), report.passed(),
                {{"<exp(-da)>", report.lhs},
                 {"gamma", report.gamma},
                 {"<da>", report.mean_delta_a},
                 {"jensen_slack", report.jensen_slack}});
}

struct JarzynskiFlags {
  double beta = 1.0;
  int steps = 1;
  double tau = 1.0;
};

int cmd_jarzynski(Session& s, const std::string& path, const JarzynskiFlags& f) {
  std::optional<Scenario> sc;
  if (!path.empty()) sc = s.load(path);
  const Tolerances tol = s.tolerances(sc ? &*sc : nullptr);
  ttm::JarzynskiReport report;
  if (sc) {
    if (sc->kind != ScenarioKind::jarzynski)
      throw InputError("scenario kind is " + std::string(to_string(sc->kind)) + ", expected jarzynski");
    report = ttm::jarzynski_scenario(HermitianOperator(sc->h0, tol), build_protocol(sc->protocol, tol), sc->beta, {}, tol).report;
  } else {
    // H(s) = σz + s σx, ramped over `steps` equal slices of total time tau
    ComplexMatrix z(2, 2), x(2, 2);
    z << 1, 0, 0, -1;
    x << 0, 1, 1, 0;
    std::vector<channel::ProtocolStep> steps;
    for (int k = 1; k <= f.steps; ++k)
      steps.push_back({HermitianOperator(z + (static_cast<double>(k) / f.steps) * x, tol), f.tau / f.steps});
    report = ttm::jarzynski_scenario(HermitianOperator(z, tol), channel::EvolutionProtocol(std::move(steps)), f.beta, {}, tol).report;
  }
  return s.emit("jarzynski", tol, jarzynski_report_to_json(report), report.passed(),
                {{"beta", report.beta},
                 {"<exp(-beta W)>", report.mean_exp_work},
                 {"Z_tau/Z_0", report.partition_ratio},
                 {"<W>", report.mean_work},
                 {"delta_F", report.delta_free_energy}});
}

std::vector<std::pair<std::string, double>> holevo_summary(const holevo::HolevoReport& r) {
  return {{"I*", r.mutual_information},
          {"chi*", r.chi},
          {"chi - I*", r.chi - r.mutual_information},
          {"-ln gamma*", r.neg_log_gamma},
          {"gamma", r.gamma},
          {"bound_slack*", r.bound_slack},
          {"g1", r.chain.g1},
          {"g2", r.chain.g2},
          {"equality_residual", r.equality_residual}};
}

int cmd_holevo_analyze(Session& s, const std::string& path) {
  const Scenario sc = s.load(path);
  const Tolerances tol = s.tolerances(&sc);
  const auto report = holevo::analyze(build_instance(sc, tol), tol);
  return s.emit("holevo analyze", tol, holevo_report_to_json(report), report.passed(), holevo_summary(report));
}

struct RandomFlags {
  Index dim = 2;
  Index words = 2;
  Index outcomes = 2;
  int trials = 10;
  std::string csv;
};

holevo::StateKind cycle_kind(int trial) { return static_cast<holevo::StateKind>(trial % 3); }

std::string_view kind_name(holevo::StateKind k) {
  switch (k) {
    case holevo::StateKind::full_rank:
      return "full_rank";
    case holevo::StateKind::pure:
      return "pure";
    case holevo::StateKind::rank_deficient:
      return "rank_deficient";
  }
  return "unknown";
}

int cmd_holevo_random(Session& s, const RandomFlags& f) {
  const Tolerances tol = s.tolerances(nullptr);
  const std::uint64_t seed = s.seed(nullptr);
  std::string csv = csv_header();
  int failed = 0;
  for (int t = 0; t < f.trials; ++t) {
    auto engine = random::make_engine(seed, static_cast<std::uint64_t>(t));
    RandomTrialRow row;
    row.trial = t;
    row.seed = engine();
    row.dim = f.dim;
    row.words = f.words;
    row.outcomes = f.outcomes;
    const auto kind = cycle_kind(t);
    row.state_kind = std::string(kind_name(kind));
    row.report = holevo::analyze(holevo::random_instance(f.dim, f.words, f.outcomes, row.seed, kind), tol);
    if (!row.report.passed()) ++failed;
    csv += csv_row(row);
  }
  if (f.csv.empty())
    s.out() << csv;
  else
    s.write_file(f.csv, csv);
  if (!s.globals().out.empty()) {
    json result{{"trials", f.trials}, {"failed", failed}, {"csv_sha256", sha256_hex(csv)},
                {"dim", f.dim}, {"words", f.words}, {"outcomes", f.outcomes}};
    return s.emit("holevo random", tol, std::move(result), failed == 0, {{"trials", f.trials}, {"failed", failed}}, seed);
  }
  return failed == 0 ? kExitOk : kExitAssertion;
}

struct OptimizeFlags {
  std::optional<Index> outcomes;
  int restarts = 8;
  int iterations = 2000;
};

int cmd_holevo_optimize(Session& s, const std::string& path, const OptimizeFlags& f) {
  const Scenario sc = s.load(path);
  const Tolerances tol = s.tolerances(&sc);
  const auto ensemble = build_ensemble(sc, tol);
  holevo::OptimizerConfig config;
  config.restarts = f.restarts;
  config.iterations = f.iterations;
  config.seed = s.seed(&sc);
  const Index outcomes = f.outcomes ? *f.outcomes
                                    : (sc.povm.empty() ? std::max<Index>(2, ensemble.dim()) : static_cast<Index>(sc.povm.size()));
  const auto opt = holevo::optimize_measurement(ensemble, outcomes, config, tol);
  const double chi = holevo::holevo_chi(ensemble);
  const auto at_optimum = holevo::analyze(holevo::CqChannelInstance(ensemble, opt.povm), tol);
  json result = optimization_to_json(opt);
  result["chi"] = chi;
  result["outcomes"] = outcomes;
  result["analysis"] = holevo_report_to_json(at_optimum);
  if (!sc.povm.empty())
    result["scenario_povm_information"] = holevo::mutual_information(build_instance(sc, tol), tol);
  std::vector<Check> checks = at_optimum.checks;
  checks.push_back(make_check("information_at_most_chi", opt.information - chi, 1e-8));
  checks.push_back(make_check("no_worse_than_start", opt.best_initial_information - opt.information, 1e-12));
  result["checks"] = checks_to_json(checks);
  return s.emit("holevo optimize", tol, std::move(result), all_passed(checks),
                {{"I*", opt.information}, {"best start I*", opt.best_initial_information}, {"chi*", chi}}, config.seed);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-time measurement fluctuation theorems and the sharpened Holevo bound", "holevoft"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed_value = 0;
  app.add_option("--tol-pack", g.tol_pack, "JSON file of tolerance overrides");
  app.add_option("--out", g.out, "write the JSON report here and print a summary");
  auto* seed_opt = app.add_option("--seed", seed_value, "seed for randomized commands");
  app.add_flag("--bits", g.bits, "print information in bits in the summary");

  std::string scenario_path;
  auto* verify = app.add_subcommand("verify", "check the fluctuation theorem for a two_time scenario");
  verify->add_option("scenario", scenario_path, "scenario JSON")->required();

  JarzynskiFlags jf;
  auto* jarzynski = app.add_subcommand("jarzynski", "Jarzynski equality for a driven qubit or a jarzynski scenario");
  jarzynski->add_option("scenario", scenario_path, "scenario JSON (optional)");
  jarzynski->add_option("--beta", jf.beta, "inverse temperature")->check(CLI::PositiveNumber);
  jarzynski->add_option("--steps", jf.steps, "slices of the ramp sigma_z + s sigma_x")->check(CLI::PositiveNumber);
  jarzynski->add_option("--tau", jf.tau, "total duration")->check(CLI::NonNegativeNumber);

  auto* holevo_cmd = app.add_subcommand("holevo", "classical-quantum channel analysis");
  holevo_cmd->require_subcommand(1);
  auto* analyze = holevo_cmd->add_subcommand("analyze", "sharpened Holevo bound for a holevo scenario");
  analyze->add_option("scenario", scenario_path, "scenario JSON")->required();

  RandomFlags rf;
  auto* random_cmd = holevo_cmd->add_subcommand("random", "batch of random instances as CSV");
  random_cmd->add_option("--dim", rf.dim, "encoding dimension")->check(CLI::PositiveNumber);
  random_cmd->add_option("--words", rf.words, "number of code words")->check(CLI::PositiveNumber);
  random_cmd->add_option("--outcomes", rf.outcomes, "POVM outcomes")->check(CLI::PositiveNumber);
  random_cmd->add_option("--trials", rf.trials, "number of instances")->check(CLI::PositiveNumber);
  random_cmd->add_option("--csv", rf.csv, "CSV path (default: standard output)");

  OptimizeFlags of;
  Index outcomes_value = 0;
  auto* optimize = holevo_cmd->add_subcommand("optimize", "search for an information-maximizing POVM");
  optimize->add_option("scenario", scenario_path, "holevo scenario JSON")->required();
  auto* outcomes_opt = optimize->add_option("--outcomes", outcomes_value, "POVM outcomes")->check(CLI::Range(2, 64));
  optimize->add_option("--restarts", of.restarts, "random restarts")->check(CLI::PositiveNumber);
  optimize->add_option("--iters", of.iterations, "iterations per restart")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;
  if (outcomes_opt->count() > 0) of.outcomes = outcomes_value;

  try {
    Session session(g, out);
    if (verify->parsed()) return cmd_verify(session, scenario_path);
    if (jarzynski->parsed()) return cmd_jarzynski(session, scenario_path, jf);
    if (analyze->parsed()) return cmd_holevo_analyze(session, scenario_path);
    if (random_cmd->parsed()) return cmd_holevo_random(session, rf);
    if (optimize->parsed()) return cmd_holevo_optimize(session, scenario_path, of);
    err << "error: no command\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << " (" << format_double(e.first()) << " vs " << format_double(e.second())
        << ")\n";
    return kExitAssertion;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitAssertion;
  }
}

}  // namespace holevoft::cli
