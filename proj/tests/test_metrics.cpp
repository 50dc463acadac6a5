#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mixsim/engine.hpp"
#include "mixsim/format.hpp"
#include "mixsim/metrics.hpp"

using namespace mixsim;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) rows.push_back(split(line));
  return rows;
}

/// A log with two honest sensors and `rounds` empty rounds.
MetricsLog blank_log(Round rounds) {
  MetricsLog log;
  log.meta.window = 100;
  log.sensors = {{1, 1.0, 1, NodeRole::kHonest, 0.0}, {2, 2.0, 2, NodeRole::kHonest, 0.0}};
  log.generated.assign(rounds, 1);
  log.delivered.assign(rounds, 0);
  log.captured.assign(rounds, 0);
  log.in_flight.assign(rounds, 0);
  log.energy_deltas.assign(rounds, {});
  return log;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mixsim_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("smoothed rate over a full window") {
  std::vector<std::uint32_t> series(300, 0);
  CHECK(smoothed_rate(series, 150, 100) == 0.0);

  std::fill(series.begin() + 100, series.begin() + 200, 1);
  CHECK(smoothed_rate(series, 199, 100) == 100.0);

  std::vector<std::uint32_t> partial(100, 0);
  std::fill(partial.begin(), partial.begin() + 87, 1);
  CHECK(smoothed_rate(partial, 99, 100) == 87.0);

  CHECK_THROWS_AS(smoothed_rate(series, 98, 100), std::out_of_range);
  CHECK_THROWS_AS(smoothed_rate(series, 300, 100), std::out_of_range);
  CHECK(smoothed_rate(series, 9, 10) == 0.0);
}

TEST_CASE("smoothed rate is translation invariant") {
  std::vector<std::uint32_t> base{1, 0, 2, 1, 0, 0, 1, 3, 0, 1, 1, 0};
  std::vector<std::uint32_t> shifted(5, 0);
  shifted.insert(shifted.end(), base.begin(), base.end());
  for (Round t = 3; t < base.size(); ++t) {
    CHECK(smoothed_rate(base, t, 4) == smoothed_rate(shifted, t + 5, 4));
  }
}

TEST_CASE("energy per delivered message") {
  SUBCASE("single ejection from hop 2") {
    MetricsLog log = blank_log(100);
    log.delivered[50] = 1;
    log.energy_deltas[50] = {{2, 4.0}};
    const auto e = energy_per_delivered(log, 99, 100);
    REQUIRE(e.has_value());
    CHECK(e->maximum == 4.0);
    CHECK(e->average == 2.0);  // node 1 idle: m = 0
  }
  SUBCASE("uniform consumption") {
    MetricsLog log = blank_log(100);
    for (Round t = 0; t < 100; ++t) log.energy_deltas[t] = {{1, 1.0}, {2, 1.0}};
    for (Round t = 0; t < 100; t += 10) log.delivered[t] = 1;
    const auto e = energy_per_delivered(log, 99, 100);
    REQUIRE(e.has_value());
    CHECK(e->average == 10.0);
    CHECK(e->maximum == 10.0);
  }
  SUBCASE("no deliveries is undefined") {
    MetricsLog log = blank_log(100);
    log.energy_deltas[3] = {{1, 1.0}};
    CHECK_FALSE(energy_per_delivered(log, 99, 100).has_value());
  }
  SUBCASE("attackers are left out") {
    MetricsLog log = blank_log(100);
    log.sensors.push_back({3, 1.5, 1, NodeRole::kAttacker, 0.0});
    log.delivered[0] = 1;
    log.energy_deltas[0] = {{1, 2.0}};
    const auto e = energy_per_delivered(log, 99, 100);
    CHECK(e->average == 1.0);
  }
}

TEST_CASE("timeseries matches the direct window computations") {
  RunConfig c;
  c.deployment.radius = 5;
  c.deployment.density = 4;
  c.deployment.attacker_pct = 10;
  c.rounds = 600;
  c.scenario = ScenarioKind::kTrustMixUnderAttack;
  const MetricsLog log = run(c);
  const auto rows = timeseries(log, 100);
  REQUIRE(rows.size() == 501);
  CHECK(rows.front().round == 99);
  CHECK(rows.back().round == 599);
  for (const auto& row : rows) {
    REQUIRE(row.delivered_pct == smoothed_rate(log.delivered, row.round, 100));
    REQUIRE(row.captured_pct == smoothed_rate(log.captured, row.round, 100));
    const auto direct = energy_per_delivered(log, row.round, 100);
    REQUIRE(direct.has_value() == row.energy.has_value());
    if (direct) {
      REQUIRE(direct->average == row.energy->average);
      REQUIRE(direct->maximum == row.energy->maximum);
    }
    // Delivered + captured + growth of the in-flight pool = generated.
    const std::int64_t in_flight_change =
        static_cast<std::int64_t>(log.in_flight[row.round]) -
        (row.round >= 100 ? static_cast<std::int64_t>(log.in_flight[row.round - 100]) : 0);
    REQUIRE(row.delivered_pct + row.captured_pct + static_cast<double>(in_flight_change) == 100.0);
  }
}

TEST_CASE("per-sensor power") {
  MetricsLog log = blank_log(5000);
  log.sensors = {{1, distance({3, 4}, {0, 0}), 5, NodeRole::kHonest, 500.0},
                 {2, 1.0, 1, NodeRole::kHonest, 0.0},
                 {3, 1.0, 1, NodeRole::kAttacker, 0.0}};
  const auto power = per_sensor_power(log, 5000);
  REQUIRE(power.size() == 2);
  CHECK(power[0].distance == 5.0);
  CHECK(power[0].power == 0.1);
  CHECK(power[1].power == 0.0);
  CHECK_THROWS_AS(per_sensor_power(log, 0), std::invalid_argument);
}

TEST_CASE("per-sensor power sums to the network energy") {
  RunConfig c;
  c.deployment.radius = 5;
  c.deployment.density = 4;
  c.deployment.attacker_pct = 20;
  c.rounds = 1000;
  c.scenario = ScenarioKind::kMixUnderAttack;
  const MetricsLog log = run(c);
  double sum = 0.0;
  for (const auto& p : per_sensor_power(log, log.rounds())) sum += p.power * log.rounds();
  CHECK(sum == doctest::Approx(static_cast<double>(log.totals.total_energy())).epsilon(1e-12));
}

TEST_CASE("export of an empty run") {
  MetricsLog log = blank_log(0);
  const auto dir = scratch_dir("empty");
  export_run(log, dir);
  const auto ts = read_csv(dir / "timeseries.csv");
  REQUIRE(ts.size() == 1);
  CHECK(ts[0] == std::vector<std::string>{"round", "scenario", "delivered_pct", "captured_pct",
                                          "avg_energy_per_delivered",
                                          "max_energy_per_delivered"});
  const auto sensors = read_csv(dir / "sensors.csv");
  CHECK(sensors.front() ==
        std::vector<std::string>{"node_id", "distance", "hop", "role", "total_energy", "power"});
  std::ifstream in(dir / "summary.json");
  const auto summary = nlohmann::json::parse(in);
  CHECK(summary["final_window"].is_null());
  CHECK(summary["totals"]["generated"] == 0);
}

TEST_CASE("exported files agree with the log and with each other") {
  RunConfig c;
  c.deployment.radius = 6;
  c.deployment.density = 4;
  c.deployment.attacker_pct = 25;
  c.rounds = 5000;
  c.scenario = ScenarioKind::kTrustMixUnderAttack;
  const MetricsLog log = run(c);
  const auto dir = scratch_dir("full");
  export_run(log, dir);

  const auto ts = read_csv(dir / "timeseries.csv");
  REQUIRE(ts.size() == 1 + 4901);
  CHECK(ts[1][0] == "99");
  CHECK(ts.back()[0] == "4999");
  const auto rows = timeseries(log, 100);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& cells = ts[i + 1];
    REQUIRE(cells.size() == 6);
    REQUIRE(cells[1] == "trustmix");
    REQUIRE(parse_number(cells[2]) == rows[i].delivered_pct);
    REQUIRE(parse_number(cells[3]) == rows[i].captured_pct);
    if (rows[i].energy) {
      REQUIRE(parse_number(cells[4]) == rows[i].energy->average);
      REQUIRE(parse_number(cells[5]) == rows[i].energy->maximum);
    } else {
      REQUIRE(cells[4] == kUndefinedMarker);
    }
  }

  const auto sensors = read_csv(dir / "sensors.csv");
  REQUIRE(sensors.size() == log.sensors.size() + 1);
  double energy_sum = 0.0;
  for (std::size_t i = 0; i < log.sensors.size(); ++i) {
    const auto& cells = sensors[i + 1];
    REQUIRE(std::stoul(cells[0]) == log.sensors[i].id);
    REQUIRE(parse_number(cells[1]) == log.sensors[i].distance);
    REQUIRE(cells[3] == to_string(log.sensors[i].role));
    REQUIRE(parse_number(cells[4]) == log.sensors[i].total_energy);
    energy_sum += parse_number(cells[4]);
  }

  std::ifstream in(dir / "summary.json");
  const auto summary = nlohmann::json::parse(in);
  CHECK(summary["scenario"] == "trustmix");
  CHECK(summary["totals"]["total_energy"].get<double>() == energy_sum);
  CHECK(summary["totals"]["generated"] == 5000);
  CHECK(summary["totals"]["delivered"].get<std::uint64_t>() +
            summary["totals"]["captured"].get<std::uint64_t>() +
            summary["totals"]["in_flight"].get<std::uint64_t>() ==
        5000);
  CHECK(summary["final_window"]["round"] == 4999);
  CHECK(summary["final_window"]["delivered_pct"].get<double>() == rows.back().delivered_pct);
}

TEST_CASE("export reports the failing path") {
  const auto blocker = scratch_dir("blocker");
  std::ofstream(blocker.string()) << "not a directory";
  try {
    export_run(blank_log(0), blocker / "inner");
    FAIL("expected an export error");
  } catch (const ExportError& e) {
    CHECK(std::string(e.what()).find("inner") != std::string::npos);
  }
  std::filesystem::remove(blocker);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, 0.1, 1.0 / 3.0, 87.0, 1e-9, 123456.789, 0.023728998}) {
    CHECK(parse_number(format_number(v)) == v);
  }
  CHECK_THROWS(parse_number("12x"));
}
