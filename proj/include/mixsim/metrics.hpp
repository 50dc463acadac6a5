#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixsim/message.hpp"
#include "mixsim/routing.hpp"
#include "mixsim/scenario.hpp"
#include "mixsim/topology.hpp"

namespace mixsim {

struct EnergyDelta {
  NodeId node = 0;
  Energy amount = 0.0;

  friend bool operator==(const EnergyDelta&, const EnergyDelta&) = default;
};

struct SensorRecord {
  NodeId id = 0;
  double distance = 0.0;  // Euclidean, to the sink
  HopCount hop = 0;
  NodeRole role = NodeRole::kHonest;
  Energy total_energy = 0.0;

  friend bool operator==(const SensorRecord&, const SensorRecord&) = default;
};

struct RunMetadata {
  ScenarioKind scenario = ScenarioKind::kMixNoAttack;
  std::uint64_t master_seed = 0;
  double radius = 0.0;
  double density = 0.0;
  double attacker_pct = 0.0;
  Round rounds = 0;
  std::uint32_t window = 100;
  std::size_t sensor_count = 0;
  std::size_t attacker_count = 0;
  std::uint32_t deployment_attempts = 0;
};

struct RunTotals {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t captured = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t slides = 0;
  std::uint64_t ejections = 0;
  /// Sum of hop^2 over ejecting nodes.
  std::uint64_t ejection_energy = 0;

  std::uint64_t total_energy() const noexcept { return slides + ejection_energy; }

  friend bool operator==(const RunTotals&, const RunTotals&) = default;
};

/// Everything a run produces, indexed by round (0-based).
struct MetricsLog {
  RunMetadata meta;
  std::vector<std::uint32_t> generated;
  std::vector<std::uint32_t> delivered;
  std::vector<std::uint32_t> captured;
  /// Messages still travelling at the end of each round.
  std::vector<std::uint64_t> in_flight;
  /// Per round, one entry per node that spent energy, ascending by node id.
  std::vector<std::vector<EnergyDelta>> energy_deltas;
  /// Sensors only (no sink), ascending by id.
  std::vector<SensorRecord> sensors;
  RunTotals totals;

  Round rounds() const noexcept { return delivered.size(); }

  /// Equality of everything the simulation produced; the scenario label is ignored.
  bool same_trajectory(const MetricsLog& other) const;
};

/**
 * Windowed rate ending at round t, as a percentage:
 * 100 * (sum of series[t-window+1..t]) / window. With one message generated
 * per round this is the windowed sum itself when window == 100.
 * Throws std::out_of_range unless window-1 <= t < series.size().
 */
double smoothed_rate(std::span<const std::uint32_t> series, Round t, std::uint32_t window);

struct EnergyPerDelivered {
  double average = 0.0;
  double maximum = 0.0;
};

/**
 * For each honest sensor, energy spent in the window ending at t divided by
 * the messages delivered in that window; returns the mean and max over
 * honest sensors. std::nullopt when the window delivered nothing.
 */
std::optional<EnergyPerDelivered> energy_per_delivered(const MetricsLog& log, Round t,
                                                       std::uint32_t window);

struct SensorPower {
  NodeId id = 0;
  double distance = 0.0;
  double power = 0.0;
};

/// Total energy / elapsed_rounds for each honest sensor.
std::vector<SensorPower> per_sensor_power(const MetricsLog& log, Round elapsed_rounds);

struct TimeseriesRow {
  Round round = 0;
  double delivered_pct = 0.0;
  double captured_pct = 0.0;
  std::optional<EnergyPerDelivered> energy;
};

/// One row per full window, rounds window-1 .. rounds()-1.
std::vector<TimeseriesRow> timeseries(const MetricsLog& log, std::uint32_t window);

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Written in place of an undefined energy-per-delivered value.
inline constexpr std::string_view kUndefinedMarker = "NA";

void write_timeseries_csv(const MetricsLog& log, std::ostream& out);
void write_sensors_csv(const MetricsLog& log, std::ostream& out);
void write_summary_json(const MetricsLog& log, std::ostream& out);

/// Writes timeseries.csv, sensors.csv and summary.json into `directory`,
/// creating it if needed. Throws ExportError naming the failing path.
void export_run(const MetricsLog& log, const std::filesystem::path& directory);

}  // namespace mixsim
