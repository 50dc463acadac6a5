#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "mixsim/adversary.hpp"
#include "mixsim/message.hpp"
#include "mixsim/metrics.hpp"
#include "mixsim/rng.hpp"
#include "mixsim/routing.hpp"
#include "mixsim/scenario.hpp"
#include "mixsim/topology.hpp"
#include "mixsim/trust.hpp"

namespace mixsim {

struct RunConfig {
  DeploymentConfig deployment;
  ScenarioKind scenario = ScenarioKind::kTrustMixUnderAttack;
  Round rounds = 5000;
  std::uint32_t smoothing_window = 100;
  /// Seeds every substream; deployment.seed is overridden by it.
  std::uint64_t master_seed = 42;

  void validate() const;
};

/// What happened during one round.
struct RoundRecord {
  Round round = 0;
  NodeId event_origin = 0;
  MessageId event_message = 0;
  std::uint32_t delivered = 0;
  std::uint32_t captured = 0;
  std::uint32_t slides = 0;
  std::uint32_t ejections = 0;
  std::vector<EnergyDelta> energy;
};

/**
 * Mutable state of one run over a fixed topology.
 *
 * Each round has an event phase (one new message at a uniformly drawn
 * non-attacker sensor) and a propagation phase (every sensor that held
 * messages at the start of the phase forwards its oldest one). A message
 * moves at most one hop per round.
 */
class Simulation {
 public:
  Simulation(Topology topology, ScenarioKind scenario, std::uint64_t master_seed,
             std::uint32_t window = 100);

  RoundRecord step_round();

  /// Rounds completed so far.
  Round round() const noexcept { return round_; }
  ScenarioKind scenario() const noexcept { return scenario_; }
  const Topology& topology() const noexcept { return topology_; }
  const TrustLedger& ledger() const noexcept { return ledger_; }
  const std::vector<Message>& messages() const noexcept { return messages_; }
  const std::vector<Energy>& consumed_energy() const noexcept { return energy_; }
  const std::deque<MessageId>& queue(NodeId node) const { return queues_.at(node); }
  /// Slides originating at each node.
  const std::vector<std::uint64_t>& outgoing() const noexcept { return outgoing_; }
  const MetricsLog& log() const noexcept { return log_; }

  /// True when `node` runs the sinkhole behavior in this scenario.
  bool acts_as_attacker(NodeId node) const noexcept {
    return attackers_active(scenario_) && topology_.is_attacker[node];
  }

  /// What `node` advertises to its neighbors right now.
  NeighborView advertised_view(NodeId node) const noexcept;

  /// Log with per-sensor totals filled in as of now.
  MetricsLog finish() const;

 private:
  void forward(NodeId sender, RoundRecord& record);
  void charge(NodeId node, Energy amount, RoundRecord& record);

  Topology topology_;
  ScenarioKind scenario_;
  std::vector<AttackerProfile> profiles_;
  std::vector<NodeId> event_sources_;

  RandomStream events_rng_;
  RandomStream tie_rng_;
  RandomStream gate_rng_;

  std::vector<Energy> energy_;
  std::vector<std::deque<MessageId>> queues_;
  std::vector<std::uint64_t> outgoing_;
  std::vector<Message> messages_;
  TrustLedger ledger_;
  Round round_ = 0;

  std::vector<NeighborView> view_buffer_;
  MetricsLog log_;
};

/// Generates the topology for config and runs config.rounds rounds.
MetricsLog run(const RunConfig& config);

/// Runs config.rounds rounds of `config.scenario` on an existing topology.
MetricsLog run_on(const Topology& topology, const RunConfig& config);

/// Runs the three scenarios on one topology, in parallel when `parallel`.
std::vector<MetricsLog> run_triplet(const RunConfig& config, bool parallel = true);

/// Result of checking the exact accounting identities of a simulation.
struct ConservationReport {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/**
 * Checks message conservation, the energy identity, ledger increments
 * against path lengths, path continuity and the gradient property, and that
 * active attackers neither spend energy nor forward anything.
 */
ConservationReport audit(const Simulation& sim);

}  // namespace mixsim
