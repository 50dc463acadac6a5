#include "mixsim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <optional>

#include <CLI11.hpp>

namespace mixsim::cli {

std::vector<ScenarioKind> CliConfig::scenarios() const {
  if (scenario == "all") return {std::begin(kAllScenarios), std::end(kAllScenarios)};
  if (auto kind = parse_scenario(scenario)) return {*kind};
  throw std::invalid_argument("unknown scenario: " + scenario);
}

RunConfig CliConfig::run_config(ScenarioKind kind) const {
  RunConfig config;
  config.deployment.radius = radius;
  config.deployment.density = density;
  config.deployment.attacker_pct = attacker_pct;
  config.deployment.seed = seed;
  config.deployment.max_resample_attempts = max_resample_attempts;
  config.scenario = kind;
  config.rounds = rounds;
  config.smoothing_window = window;
  config.master_seed = seed;
  return config;
}

namespace {

void build_app(CLI::App& app, CliConfig& config) {
  app.add_option("--radius", config.radius, "Deployment disc radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--density", config.density, "Sensors per unit area")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--attacker-pct", config.attacker_pct, "Attackers as a percentage of sensors")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  app.add_option("--rounds", config.rounds, "Rounds to simulate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--window", config.window, "Smoothing window in rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
  app.add_option("--max-resample", config.max_resample_attempts,
                 "Deployments to try before giving up on connectivity")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--scenario", config.scenario, "Scenario to run")
      ->check(CLI::IsMember({"mix", "mix-attack", "trustmix", "all"}))
      ->capture_default_str();
  app.add_option("--out", config.out, "Output directory")->capture_default_str();
  app.add_flag("-v,--verbose", config.verbosity, "Increase verbosity");
  app.add_flag("--debug-dumps", config.debug_dumps, "Also write topology.csv and ledger.csv");
}

struct ScenarioResult {
  MetricsLog log;
  std::optional<TrustLedger> ledger;
};

ScenarioResult simulate(const Topology& topology, const RunConfig& config) {
  Simulation sim(topology, config.scenario, config.master_seed, config.smoothing_window);
  for (Round r = 0; r < config.rounds; ++r) sim.step_round();
  ScenarioResult result{sim.finish(), sim.ledger()};
  result.log.meta.radius = config.deployment.radius;
  result.log.meta.density = config.deployment.density;
  result.log.meta.attacker_pct = config.deployment.attacker_pct;
  return result;
}

std::string cell(double value, int precision = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

void print_table(const std::vector<MetricsLog>& logs, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %12s %12s %14s %14s %14s\n", "scenario", "delivered%",
                "captured%", "avg_E/deliv", "max_E/deliv", "total_energy");
  out << line;
  for (const MetricsLog& log : logs) {
    std::string delivered = "NA", captured = "NA", avg = "NA", max = "NA";
    const std::uint32_t w = log.meta.window;
    if (log.rounds() >= w) {
      const Round t = log.rounds() - 1;
      delivered = cell(smoothed_rate(log.delivered, t, w));
      captured = cell(smoothed_rate(log.captured, t, w));
      if (auto e = energy_per_delivered(log, t, w)) {
        avg = cell(e->average, 4);
        max = cell(e->maximum, 4);
      }
    }
    std::snprintf(line, sizeof line, "%-12s %12s %12s %14s %14s %14llu\n",
                  std::string(scenario_name(log.meta.scenario)).c_str(), delivered.c_str(),
                  captured.c_str(), avg.c_str(), max.c_str(),
                  static_cast<unsigned long long>(log.totals.total_energy()));
    out << line;
  }
}

}  // namespace

CliConfig parse_args(std::span<const std::string> args) {
  CliConfig config;
  CLI::App app{"Discrete-round simulator for MIX and trustMIX under sinkhole attacks", "mixsim"};
  build_app(app, config);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw CliExit(0, app.help());
  } catch (const CLI::ParseError& e) {
    throw CliExit(2, std::string(e.what()) + "\n" + app.help());
  }
  return config;
}

CliConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_args(args);
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<ScenarioKind> kinds;
  Topology topology;
  try {
    kinds = config.scenarios();
    RunConfig base = config.run_config(kinds.front());
    base.validate();
    topology = generate_topology(base.deployment);
  } catch (const std::exception& e) {
    err << "mixsim: " << e.what() << '\n';
    return 1;
  }
  if (config.verbosity > 0) {
    err << "mixsim: " << topology.node_count() - 1 << " sensors, " << topology.attackers.size()
        << " attackers, connected after " << topology.deployment_attempts << " deployment(s)\n";
  }

  std::vector<std::future<ScenarioResult>> pending;
  for (ScenarioKind kind : kinds) {
    pending.push_back(std::async(std::launch::async, [&topology, &config, kind] {
      return simulate(topology, config.run_config(kind));
    }));
  }

  std::vector<MetricsLog> logs;
  int status = 0;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    try {
      ScenarioResult result = pending[i].get();
      const auto dir = config.out / std::string(scenario_name(kinds[i]));
      export_run(result.log, dir);
      if (config.debug_dumps) {
        std::ofstream topo_out(dir / "topology.csv", std::ios::binary | std::ios::trunc);
        write_topology_csv(topology, topo_out);
        std::ofstream ledger_out(dir / "ledger.csv", std::ios::binary | std::ios::trunc);
        write_ledger_csv(*result.ledger, ledger_out);
        if (!topo_out || !ledger_out) throw ExportError("cannot write debug dumps in " + dir.string());
      }
      if (config.verbosity > 0) err << "mixsim: wrote " << dir.string() << '\n';
      logs.push_back(std::move(result.log));
    } catch (const std::exception& e) {
      err << "mixsim: " << scenario_name(kinds[i]) << ": " << e.what() << '\n';
      status = 1;
    }
  }
  if (!logs.empty()) print_table(logs, out);
  return status;
}

}  // namespace mixsim::cli
