#include "mixsim/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include <json.hpp>

#include "mixsim/format.hpp"

namespace mixsim {

bool MetricsLog::same_trajectory(const MetricsLog& other) const {
  const RunMetadata& a = meta;
  const RunMetadata& b = other.meta;
  return a.master_seed == b.master_seed && a.radius == b.radius && a.density == b.density &&
         a.attacker_pct == b.attacker_pct && a.rounds == b.rounds && a.window == b.window &&
         a.sensor_count == b.sensor_count && a.attacker_count == b.attacker_count &&
         a.deployment_attempts == b.deployment_attempts && generated == other.generated &&
         delivered == other.delivered && captured == other.captured &&
         in_flight == other.in_flight && energy_deltas == other.energy_deltas &&
         sensors == other.sensors && totals == other.totals;
}

double smoothed_rate(std::span<const std::uint32_t> series, Round t, std::uint32_t window) {
  if (window == 0) throw std::out_of_range("smoothed_rate: window must be positive");
  if (t + 1 < window || t >= series.size()) {
    throw std::out_of_range("smoothed_rate: round " + std::to_string(t) +
                            " has no full window of " + std::to_string(window));
  }
  std::uint64_t sum = 0;
  for (Round i = t + 1 - window; i <= t; ++i) sum += series[i];
  return 100.0 * static_cast<double>(sum) / static_cast<double>(window);
}

namespace {

/// Per-node energy spent inside a sliding window of rounds.
class WindowEnergy {
 public:
  explicit WindowEnergy(const MetricsLog& log) : log_(log) {
    std::size_t max_id = 0;
    for (const auto& s : log.sensors) max_id = std::max<std::size_t>(max_id, s.id);
    spent_.assign(max_id + 1, 0.0);
  }

  void add_round(Round t) {
    for (const EnergyDelta& d : log_.energy_deltas[t]) spent_[d.node] += d.amount;
  }
  void remove_round(Round t) {
    for (const EnergyDelta& d : log_.energy_deltas[t]) spent_[d.node] -= d.amount;
  }

  std::optional<EnergyPerDelivered> stats(std::uint64_t deliveries) const {
    if (deliveries == 0) return std::nullopt;
    const double denom = static_cast<double>(deliveries);
    double sum = 0.0;
    double max = 0.0;
    std::size_t honest = 0;
    for (const auto& s : log_.sensors) {
      if (s.role != NodeRole::kHonest) continue;
      const double m = spent_[s.id] / denom;
      sum += m;
      max = std::max(max, m);
      ++honest;
    }
    if (honest == 0) return EnergyPerDelivered{0.0, 0.0};
    return EnergyPerDelivered{sum / static_cast<double>(honest), max};
  }

 private:
  const MetricsLog& log_;
  std::vector<double> spent_;
};

}  // namespace

std::optional<EnergyPerDelivered> energy_per_delivered(const MetricsLog& log, Round t,
                                                       std::uint32_t window) {
  if (window == 0 || t + 1 < window || t >= log.rounds()) {
    throw std::out_of_range("energy_per_delivered: round " + std::to_string(t) +
                            " has no full window of " + std::to_string(window));
  }
  WindowEnergy energy(log);
  std::uint64_t deliveries = 0;
  for (Round i = t + 1 - window; i <= t; ++i) {
    energy.add_round(i);
    deliveries += log.delivered[i];
  }
  return energy.stats(deliveries);
}

std::vector<SensorPower> per_sensor_power(const MetricsLog& log, Round elapsed_rounds) {
  if (elapsed_rounds == 0) throw std::invalid_argument("per_sensor_power: elapsed_rounds is 0");
  std::vector<SensorPower> out;
  for (const auto& s : log.sensors) {
    if (s.role != NodeRole::kHonest) continue;
    out.push_back({s.id, s.distance, s.total_energy / static_cast<double>(elapsed_rounds)});
  }
  return out;
}

std::vector<TimeseriesRow> timeseries(const MetricsLog& log, std::uint32_t window) {
  if (window == 0) throw std::out_of_range("timeseries: window must be positive");
  std::vector<TimeseriesRow> rows;
  WindowEnergy energy(log);
  std::uint64_t delivered = 0;
  std::uint64_t captured = 0;
  for (Round t = 0; t < log.rounds(); ++t) {
    energy.add_round(t);
    delivered += log.delivered[t];
    captured += log.captured[t];
    if (t >= window) {
      energy.remove_round(t - window);
      delivered -= log.delivered[t - window];
      captured -= log.captured[t - window];
    }
    if (t + 1 < window) continue;
    rows.push_back({t, 100.0 * static_cast<double>(delivered) / window,
                    100.0 * static_cast<double>(captured) / window, energy.stats(delivered)});
  }
  return rows;
}

void write_timeseries_csv(const MetricsLog& log, std::ostream& out) {
  out << "round,scenario,delivered_pct,captured_pct,avg_energy_per_delivered,"
         "max_energy_per_delivered\n";
  const auto scenario = scenario_name(log.meta.scenario);
  for (const TimeseriesRow& row : timeseries(log, log.meta.window)) {
    out << row.round << ',' << scenario << ',' << format_number(row.delivered_pct) << ','
        << format_number(row.captured_pct) << ',';
    if (row.energy) {
      out << format_number(row.energy->average) << ',' << format_number(row.energy->maximum);
    } else {
      out << kUndefinedMarker << ',' << kUndefinedMarker;
    }
    out << '\n';
  }
}

void write_sensors_csv(const MetricsLog& log, std::ostream& out) {
  out << "node_id,distance,hop,role,total_energy,power\n";
  const Round elapsed = log.rounds();
  for (const auto& s : log.sensors) {
    const double power = elapsed == 0 ? 0.0 : s.total_energy / static_cast<double>(elapsed);
    out << s.id << ',' << format_number(s.distance) << ',' << s.hop << ',' << to_string(s.role)
        << ',' << format_number(s.total_energy) << ',' << format_number(power) << '\n';
  }
}

void write_summary_json(const MetricsLog& log, std::ostream& out) {
  using nlohmann::json;
  const RunMetadata& m = log.meta;
  json summary;
  summary["scenario"] = std::string(scenario_name(m.scenario));
  summary["master_seed"] = m.master_seed;
  summary["radius"] = m.radius;
  summary["density"] = m.density;
  summary["attacker_pct"] = m.attacker_pct;
  summary["rounds"] = m.rounds;
  summary["window"] = m.window;
  summary["sensor_count"] = m.sensor_count;
  summary["attacker_count"] = m.attacker_count;
  summary["deployment_attempts"] = m.deployment_attempts;

  json final_window = nullptr;
  if (m.window > 0 && log.rounds() >= m.window) {
    const Round t = log.rounds() - 1;
    final_window = json::object();
    final_window["round"] = t;
    final_window["delivered_pct"] = smoothed_rate(log.delivered, t, m.window);
    final_window["captured_pct"] = smoothed_rate(log.captured, t, m.window);
    const auto energy = energy_per_delivered(log, t, m.window);
    final_window["avg_energy_per_delivered"] = energy ? json(energy->average) : json(nullptr);
    final_window["max_energy_per_delivered"] = energy ? json(energy->maximum) : json(nullptr);
  }
  summary["final_window"] = final_window;

  const RunTotals& t = log.totals;
  summary["totals"] = {{"generated", t.generated},
                       {"delivered", t.delivered},
                       {"captured", t.captured},
                       {"in_flight", t.in_flight},
                       {"slides", t.slides},
                       {"ejections", t.ejections},
                       {"ejection_energy", t.ejection_energy},
                       {"total_energy", t.total_energy()}};
  out << summary.dump(2) << '\n';
}

namespace {

template <class Writer>
void write_file(const std::filesystem::path& path, const MetricsLog& log, Writer writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ExportError("cannot open " + path.string() + " for writing");
  writer(log, out);
  out.flush();
  if (!out) throw ExportError("write failed for " + path.string());
}

}  // namespace

void export_run(const MetricsLog& log, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw ExportError("cannot create directory " + directory.string() + ": " + ec.message());
  write_file(directory / "timeseries.csv", log, write_timeseries_csv);
  write_file(directory / "sensors.csv", log, write_sensors_csv);
  write_file(directory / "summary.json", log, write_summary_json);
}

}  // namespace mixsim
