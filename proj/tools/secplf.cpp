// secplf: run the attack scenarios, the property suites and the price-risk
// analyzer from the command line.
//
// Exit codes: 0 ran to completion (reverted transactions included),
// 2 configuration or input error, 3 invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "secplf/adversary.hpp"
#include "secplf/properties.hpp"
#include "secplf/reports.hpp"
#include "secplf/risk.hpp"
#include "secplf/scenario.hpp"

namespace fs = std::filesystem;
using namespace secplf;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ConfigError, "cannot write " + path.string());
  out << content;
}

struct ModeFlags {
  bool guarded = false;
  bool unguarded = false;
};

void add_mode_flags(CLI::App* cmd, ModeFlags& flags) {
  auto* g = cmd->add_flag("--guarded", flags.guarded, "Price through the SecPLF guard");
  auto* u = cmd->add_flag("--unguarded", flags.unguarded, "Price from the raw oracle");
  g->excludes(u);
}

Scenario load_with_mode(const std::string& path, const ModeFlags& flags) {
  Scenario sc = load_scenario(path);
  if (flags.guarded) set_price_mode(sc, PriceMode::SecPlfGuard);
  if (flags.unguarded) set_price_mode(sc, PriceMode::RawOracle);
  return sc;
}

struct SimulateArgs {
  std::string scenario;
  ModeFlags mode;
  std::string trace_out;
  std::string report_out;
  bool json = false;
};

int simulate_attack(const SimulateArgs& args) {
  Scenario sc = load_with_mode(args.scenario, args.mode);
  if (!sc.attack) throw ConfigError("attack", "scenario has no attack plan");
  AttackRun run = run_attack(begin_block(sc.state), *sc.attack);
  const std::string report_json = attack_report_to_json(run.report);
  if (!args.report_out.empty()) write_file(args.report_out, report_json + "\n");
  if (!args.trace_out.empty()) write_file(args.trace_out, trace_to_json(run.report.trace) + "\n");
  std::cout << (args.json ? report_json + "\n" : format_attack_trace(run.report));
  return 0;
}

struct ExecuteArgs {
  std::string scenario;
  ModeFlags mode;
  std::string trace_out;
};

int execute(const ExecuteArgs& args) {
  Scenario sc = load_with_mode(args.scenario, args.mode);
  if (!sc.transaction) throw ConfigError("steps", "scenario has no steps");
  WorldState state = begin_block(sc.state);
  Transaction tx = *sc.transaction;
  tx.block = state.current_block;
  TxResult result = execute_transaction(state, tx);
  if (!args.trace_out.empty()) write_file(args.trace_out, trace_to_json(result.outcome.trace) + "\n");

  for (const StepRecord& s : result.outcome.trace.steps) {
    std::cout << s.index + 1 << ". " << s.label;
    for (const auto& [k, v] : s.values) std::cout << ' ' << k << '=' << to_decimal(v);
    if (s.failed) std::cout << " FAILED: " << s.error;
    std::cout << '\n';
  }
  std::cout << "outcome: " << to_string(result.outcome.status);
  if (!result.outcome.reason.empty()) std::cout << " (" << result.outcome.reason << ")";
  std::cout << '\n';
  return 0;
}

struct AnalyzeArgs {
  std::string data_dir;
  std::string out_dir;
  std::string market_caps;
  double epsilon = 1.25;
  double z = 1 - 1e-5;
  std::size_t window = 600;
  std::size_t buckets = 200;
};

enum class Analysis { Tz, Cdf, Exceedance };

int analyze(Analysis what, AnalyzeArgs args) {
  if (args.data_dir.empty()) {
    if (const char* env = std::getenv("SECPLF_DATA_DIR")) args.data_dir = env;
  }
  if (args.data_dir.empty()) throw ConfigError("--data-dir", "no data directory (set --data-dir or SECPLF_DATA_DIR)");

  std::map<std::string, double> caps;
  fs::path caps_path = args.market_caps.empty() ? fs::path(args.data_dir) / "market_caps.csv" : fs::path(args.market_caps);
  if (fs::exists(caps_path)) {
    std::ifstream in(caps_path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    caps = parse_market_caps(text, caps_path.string());
  } else if (!args.market_caps.empty()) {
    throw ConfigError("--market-caps", "cannot open " + caps_path.string());
  }

  std::vector<PriceSeries> series = ingest_directory(args.data_dir);
  if (series.empty()) throw ConfigError("--data-dir", "no .csv price files in " + args.data_dir);

  RiskReport report;
  report.epsilon = args.epsilon;
  report.z = args.z;
  report.window = args.window;
  for (const PriceSeries& s : series) {
    AssetRisk a;
    a.asset = s.asset;
    a.points = s.size();
    if (auto it = caps.find(s.asset); it != caps.end()) a.market_cap_usd = it->second;
    try {
      switch (what) {
        case Analysis::Tz: a.tz = compute_tz(s, args.epsilon, args.z); break;
        case Analysis::Exceedance:
          a.exceedance_count = exceedance_count(s, args.window, args.epsilon);
          a.exceedance_probability = exceedance_probability(s, args.window, args.epsilon);
          break;
        case Analysis::Cdf: a.cdf = cdf_report(s, args.window, args.epsilon, args.buckets); break;
      }
    } catch (const Error& e) {
      throw ConfigError(s.asset, e.what());
    }
    report.assets.push_back(std::move(a));
  }

  const std::string table = what == Analysis::Cdf ? cdf_csv(report) : risk_table_csv(report);
  if (!args.out_dir.empty()) {
    fs::path out = args.out_dir;
    write_file(out / "risk_report.json", risk_report_to_json(report) + "\n");
    switch (what) {
      case Analysis::Tz:
        write_file(out / "tz.csv", table);
        write_file(out / "tz_vs_market_cap.dat", tz_plot_data(report));
        break;
      case Analysis::Exceedance: write_file(out / "exceedance.csv", table); break;
      case Analysis::Cdf:
        write_file(out / "cdf.csv", table);
        write_file(out / "cdf.dat", cdf_plot_data(report));
        break;
    }
  }
  std::cout << table;
  return 0;
}

struct SuiteArgs {
  std::uint64_t seed = SuiteOptions{}.seed;
  std::size_t trials = SuiteOptions{}.trials;
  bool corrupt_guard = false;
};

int property_suite(const SuiteArgs& args) {
  SuiteOptions options;
  options.seed = args.seed;
  options.trials = args.trials;
  options.guard_cap = args.corrupt_guard ? GuardCap::Disabled : GuardCap::Enforced;

  bool all_passed = true;
  for (const SuiteResult& r : run_property_suite(options)) {
    all_passed = all_passed && r.passed();
    std::cout << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.trials << " trials, " << r.failures
              << " failures";
    if (r.boundary_required) std::cout << ", " << r.boundary_hits << " boundary hits";
    if (r.committed > 0) std::cout << ", " << r.committed << " committed";
    std::cout << ")\n";
    if (!r.counterexample.empty()) std::cout << "counterexample:\n" << r.counterexample << "\n";
  }
  return all_passed ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flash-loan oracle manipulation simulator and price-risk analyzer"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate-attack", "Run a scenario's attack plan");
  sim_cmd->add_option("scenario", sim.scenario, "Scenario JSON file")->required();
  add_mode_flags(sim_cmd, sim.mode);
  sim_cmd->add_option("--trace-out", sim.trace_out, "Write the step trace as JSON");
  sim_cmd->add_option("--report-out", sim.report_out, "Write the attack report as JSON");
  sim_cmd->add_flag("--json", sim.json, "Print the report JSON instead of the walkthrough");

  ExecuteArgs exe;
  auto* exe_cmd = app.add_subcommand("execute", "Run a scenario's explicit step list as one transaction");
  exe_cmd->add_option("scenario", exe.scenario, "Scenario JSON file")->required();
  add_mode_flags(exe_cmd, exe.mode);
  exe_cmd->add_option("--trace-out", exe.trace_out, "Write the step trace as JSON");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "Price-discrepancy statistics over minute CSVs");
  an_cmd->require_subcommand(1);
  an_cmd->add_option("--data-dir", an.data_dir, "Directory of <asset>.csv files (default $SECPLF_DATA_DIR)");
  an_cmd->add_option("--out-dir", an.out_dir, "Write report JSON, CSV and plot data here");
  an_cmd->add_option("--market-caps", an.market_caps, "asset,market_cap_usd CSV (default <data-dir>/market_caps.csv)");
  an_cmd->add_option("--epsilon", an.epsilon, "Growth cap epsilon")->check(CLI::Range(1.0, 1e9))->capture_default_str();
  an_cmd->add_option("--z", an.z, "Confidence level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  an_cmd->add_option("--t", an.window, "Window T in minutes")->check(CLI::PositiveNumber)->capture_default_str();
  an_cmd->add_option("--buckets", an.buckets, "CDF sample points")->check(CLI::Range(2, 1000000))->capture_default_str();
  auto* tz_cmd = an_cmd->add_subcommand("tz", "Largest window T whose confidence reaches z");
  auto* cdf_cmd = an_cmd->add_subcommand("cdf", "CDF of max_T(delta) / d over the series");
  auto* ex_cmd = an_cmd->add_subcommand("exceedance", "Minutes with a positive discrepancy at window T");

  SuiteArgs suite;
  auto* suite_cmd = app.add_subcommand("property-suite", "Randomized guard and attack invariant checks");
  suite_cmd->add_option("--seed", suite.seed, "RNG seed")->capture_default_str();
  suite_cmd->add_option("--trials", suite.trials, "Trials per suite")->check(CLI::PositiveNumber)->capture_default_str();
  suite_cmd->add_flag("--corrupt-guard", suite.corrupt_guard, "Disable the guard cap")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sim_cmd) return simulate_attack(sim);
    if (*exe_cmd) return execute(exe);
    if (*suite_cmd) return property_suite(suite);
    if (*tz_cmd) return analyze(Analysis::Tz, an);
    if (*cdf_cmd) return analyze(Analysis::Cdf, an);
    if (*ex_cmd) return analyze(Analysis::Exceedance, an);
  } catch (const Error& e) {
    std::cerr << "secplf: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "secplf: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
