#include "mixsim/engine.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <string>

namespace mixsim {

void RunConfig::validate() const {
  deployment.validate();
  if (smoothing_window == 0) throw std::invalid_argument("smoothing window must be positive");
}

Simulation::Simulation(Topology topology, ScenarioKind scenario, std::uint64_t master_seed,
                       std::uint32_t window)
    : topology_(std::move(topology)),
      scenario_(scenario),
      events_rng_(master_seed, stream::kEvents),
      tie_rng_(master_seed, stream::kTieBreak),
      gate_rng_(master_seed, stream::kTrustGate) {
  const std::size_t n = topology_.node_count();
  if (n == 0 || topology_.adjacency.size() != n || topology_.hop.size() != n ||
      topology_.is_attacker.size() != n) {
    throw std::invalid_argument("Simulation: inconsistent topology");
  }
  for (NodeId id = 0; id < n; ++id) {
    if (topology_.hop[id] == kDisconnected) {
      throw std::invalid_argument("Simulation: node " + std::to_string(id) +
                                  " cannot reach the sink");
    }
  }
  profiles_ = fabricate_all(topology_);

  // Events come from the same sensors in every scenario.
  for (NodeId id = 0; id < n; ++id) {
    if (id != topology_.sink_id && !topology_.is_attacker[id]) event_sources_.push_back(id);
  }
  if (event_sources_.empty()) throw std::invalid_argument("Simulation: no honest sensor");

  energy_.assign(n, 0.0);
  queues_.resize(n);
  outgoing_.assign(n, 0);

  log_.meta.scenario = scenario_;
  log_.meta.master_seed = master_seed;
  log_.meta.window = window;
  log_.meta.sensor_count = n - 1;
  log_.meta.attacker_count = topology_.attackers.size();
  log_.meta.deployment_attempts = topology_.deployment_attempts;
}

NeighborView Simulation::advertised_view(NodeId node) const noexcept {
  if (acts_as_attacker(node)) return profiles_[node].view();
  return {node, topology_.hop[node], energy_[node]};
}

void Simulation::charge(NodeId node, Energy amount, RoundRecord& record) {
  energy_[node] += amount;
  record.energy.push_back({node, amount});
}

void Simulation::forward(NodeId sender, RoundRecord& record) {
  const MessageId id = queues_[sender].front();
  queues_[sender].pop_front();
  Message& message = messages_[id];

  view_buffer_.clear();
  for (NodeId m : topology_.adjacency[sender]) {
    if (m != topology_.sink_id) view_buffer_.push_back(advertised_view(m));
  }
  const NodeSelfState self{sender, topology_.hop[sender], energy_[sender]};

  RouteDecision decision;
  if (scenario_ == ScenarioKind::kTrustMixUnderAttack) {
    auto trust_of = [this, sender](NodeId m) { return ledger_.trust(sender, m); };
    decision = trustmix_next_hop(self, std::span<const NeighborView>(view_buffer_), trust_of,
                                 gate_rng_, tie_rng_);
  } else {
    decision = mix_next_hop(self, std::span<const NeighborView>(view_buffer_), tie_rng_);
  }

  if (const auto* slide = std::get_if<Slide>(&decision)) {
    const NodeId target = slide->target;
    charge(sender, 1.0, record);
    ++record.slides;
    ++outgoing_[sender];
    ledger_.record_send(sender, target);
    message.path.push_back({sender, target});
    if (acts_as_attacker(target)) {
      capture(target, message, round_, ledger_);
      ++record.captured;
    } else {
      queues_[target].push_back(id);
    }
  } else {
    charge(sender, ejection_cost(self), record);
    ++record.ejections;
    log_.totals.ejection_energy += static_cast<std::uint64_t>(self.hop) * self.hop;
    ledger_.record_delivery(message.path);
    message.fate = Fate::kDelivered;
    message.fate_round = round_;
    ++record.delivered;
  }
}

RoundRecord Simulation::step_round() {
  RoundRecord record;
  record.round = round_;

  // Event phase.
  const NodeId origin = event_sources_[events_rng_.below(event_sources_.size())];
  const MessageId id = messages_.size();
  messages_.push_back(Message{id, origin, round_, {}, Fate::kInFlight, 0});
  queues_[origin].push_back(id);
  record.event_origin = origin;
  record.event_message = id;

  // Propagation phase over a snapshot of the non-empty queues.
  std::vector<NodeId> senders;
  for (NodeId node = 0; node < queues_.size(); ++node) {
    if (!queues_[node].empty()) senders.push_back(node);
  }
  for (NodeId sender : senders) forward(sender, record);

  RunTotals& totals = log_.totals;
  totals.generated += 1;
  totals.delivered += record.delivered;
  totals.captured += record.captured;
  totals.slides += record.slides;
  totals.ejections += record.ejections;
  totals.in_flight = totals.generated - totals.delivered - totals.captured;

  log_.generated.push_back(1);
  log_.delivered.push_back(record.delivered);
  log_.captured.push_back(record.captured);
  log_.in_flight.push_back(totals.in_flight);
  log_.energy_deltas.push_back(record.energy);

  ++round_;
  return record;
}

MetricsLog Simulation::finish() const {
  MetricsLog log = log_;
  log.meta.rounds = round_;
  log.sensors.clear();
  const Point2D sink = topology_.positions[topology_.sink_id];
  for (NodeId id = 0; id < topology_.node_count(); ++id) {
    if (id == topology_.sink_id) continue;
    const NodeRole role = acts_as_attacker(id) ? NodeRole::kAttacker : NodeRole::kHonest;
    log.sensors.push_back(
        {id, distance(topology_.positions[id], sink), topology_.hop[id], role, energy_[id]});
  }
  return log;
}

MetricsLog run_on(const Topology& topology, const RunConfig& config) {
  config.validate();
  Simulation sim(topology, config.scenario, config.master_seed, config.smoothing_window);
  for (Round r = 0; r < config.rounds; ++r) sim.step_round();
  MetricsLog log = sim.finish();
  log.meta.radius = config.deployment.radius;
  log.meta.density = config.deployment.density;
  log.meta.attacker_pct = config.deployment.attacker_pct;
  return log;
}

namespace {

Topology topology_for(const RunConfig& config) {
  config.validate();
  DeploymentConfig deployment = config.deployment;
  deployment.seed = config.master_seed;
  return generate_topology(deployment);
}

}  // namespace

MetricsLog run(const RunConfig& config) { return run_on(topology_for(config), config); }

std::vector<MetricsLog> run_triplet(const RunConfig& config, bool parallel) {
  const Topology topology = topology_for(config);
  std::vector<MetricsLog> logs;
  if (!parallel) {
    for (ScenarioKind kind : kAllScenarios) {
      RunConfig c = config;
      c.scenario = kind;
      logs.push_back(run_on(topology, c));
    }
    return logs;
  }
  std::vector<std::future<MetricsLog>> pending;
  for (ScenarioKind kind : kAllScenarios) {
    RunConfig c = config;
    c.scenario = kind;
    pending.push_back(std::async(std::launch::async, [&topology, c] { return run_on(topology, c); }));
  }
  for (auto& f : pending) logs.push_back(f.get());
  return logs;
}

ConservationReport audit(const Simulation& sim) {
  ConservationReport report;
  auto fail = [&report](std::string what) { report.failures.push_back(std::move(what)); };
  const Topology& topo = sim.topology();

  // Messages.
  std::uint64_t delivered = 0, captured = 0, in_flight = 0;
  std::uint64_t delivered_links = 0, captured_links = 0;
  for (const Message& m : sim.messages()) {
    if (m.origin == topo.sink_id || topo.is_attacker[m.origin]) {
      fail("message " + std::to_string(m.id) + ": originated at the sink or an attacker");
    }
    NodeId at = m.origin;
    for (const Link& link : m.path) {
      if (link.from != at) fail("message " + std::to_string(m.id) + ": path is not contiguous");
      if (sim.advertised_view(link.to).advertised_hop >= topo.hop[link.from]) {
        fail("message " + std::to_string(m.id) + ": slide did not descend the gradient");
      }
      at = link.to;
    }
    switch (m.fate) {
      case Fate::kDelivered:
        ++delivered;
        delivered_links += m.path.size();
        break;
      case Fate::kCaptured:
        ++captured;
        captured_links += m.path.size();
        if (m.path.empty() || !sim.acts_as_attacker(m.path.back().to)) {
          fail("message " + std::to_string(m.id) + ": captured away from an attacker");
        }
        break;
      case Fate::kInFlight: {
        ++in_flight;
        const auto& q = sim.queue(m.holder());
        if (std::find(q.begin(), q.end(), m.id) == q.end()) {
          fail("message " + std::to_string(m.id) + ": in flight but not queued at its holder");
        }
        break;
      }
    }
  }
  std::uint64_t queued = 0;
  for (NodeId id = 0; id < topo.node_count(); ++id) queued += sim.queue(id).size();
  const std::uint64_t generated = sim.messages().size();
  if (generated != delivered + captured + in_flight) fail("generated != delivered + captured + in flight");
  if (queued != in_flight) fail("queued messages != in-flight messages");

  const RunTotals& totals = sim.log().totals;
  if (totals.generated != generated || totals.delivered != delivered ||
      totals.captured != captured || totals.in_flight != in_flight) {
    fail("running totals disagree with the message registry");
  }

  // Energy: every slide costs 1, every ejection hop^2.
  double network_energy = 0.0;
  for (Energy e : sim.consumed_energy()) network_energy += e;
  if (network_energy != static_cast<double>(totals.slides + totals.ejection_energy)) {
    fail("total energy != slides + sum of hop^2 over ejections");
  }
  std::uint64_t slides = 0;
  for (std::uint64_t out : sim.outgoing()) slides += out;
  if (slides != totals.slides) fail("per-node outgoing counts disagree with slide total");
  if (totals.ejections != delivered) fail("ejections != deliveries");

  // Ledger.
  const LinkEvidence ledger = sim.ledger().totals();
  if (ledger.sent != totals.slides) fail("ledger sends != slides");
  if (ledger.received != delivered_links) fail("ledger r increments != delivered path lengths");
  if (ledger.captured != captured_links) fail("ledger c increments != captured path lengths");
  for (const auto& [link, e] : sim.ledger().entries()) {
    if (e.received + e.captured > e.sent) fail("ledger link with r + c > s");
  }

  // Attackers.
  for (NodeId a : topo.attackers) {
    if (!sim.acts_as_attacker(a)) continue;
    if (sim.consumed_energy()[a] != 0.0) fail("attacker " + std::to_string(a) + " spent energy");
    if (sim.outgoing()[a] != 0) fail("attacker " + std::to_string(a) + " forwarded a message");
    if (!sim.queue(a).empty()) fail("attacker " + std::to_string(a) + " holds a queue");
  }
  if (!sim.queue(topo.sink_id).empty()) fail("sink holds a queue");
  return report;
}

}  // namespace mixsim
