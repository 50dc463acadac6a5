#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixsim/engine.hpp"

namespace mixsim::cli {

struct CliConfig {
  double radius = 8.0;
  double density = 4.0;
  double attacker_pct = 10.0;
  Round rounds = 5000;
  std::uint32_t window = 100;
  std::uint64_t seed = 42;
  std::uint32_t max_resample_attempts = 100;
  /// One of mix, mix-attack, trustmix, all.
  std::string scenario = "all";
  std::filesystem::path out = "./out";
  int verbosity = 0;
  /// Also write topology.csv and ledger.csv per scenario.
  bool debug_dumps = false;

  std::vector<ScenarioKind> scenarios() const;
  RunConfig run_config(ScenarioKind kind) const;
};

/// Parsing stopped: either --help (status 0) or a usage error (status 2).
class CliExit : public std::runtime_error {
 public:
  CliExit(int status, std::string text)
      : std::runtime_error(text), status_(status), text_(std::move(text)) {}
  int status() const noexcept { return status_; }
  const std::string& text() const noexcept { return text_; }

 private:
  int status_;
  std::string text_;
};

/// Parses arguments (without the program name). Throws CliExit.
CliConfig parse_args(std::span<const std::string> args);
CliConfig parse_args(int argc, const char* const* argv);

/// Runs the requested scenarios, writes `<out>/<scenario>/` file sets and
/// prints a comparison table to `out`. Returns the process exit status.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mixsim::cli
