#include "mixsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>
#include <unordered_map>

#include "mixsim/format.hpp"

namespace mixsim {

double distance(Point2D a, Point2D b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

void DeploymentConfig::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("radius must be a positive finite number");
  }
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw std::invalid_argument("density must be a positive finite number");
  }
  if (!(attacker_pct >= 0.0 && attacker_pct <= 100.0)) {
    throw std::invalid_argument("attacker percentage must lie in [0, 100]");
  }
  if (max_resample_attempts == 0) {
    throw std::invalid_argument("max_resample_attempts must be positive");
  }
}

std::size_t DeploymentConfig::sensor_count() const {
  return static_cast<std::size_t>(std::llround(std::numbers::pi * radius * radius * density));
}

std::size_t DeploymentConfig::attacker_count() const {
  return static_cast<std::size_t>(
      std::llround(attacker_pct / 100.0 * static_cast<double>(sensor_count())));
}

const char* to_string(NodeRole role) noexcept {
  switch (role) {
    case NodeRole::kSink:
      return "sink";
    case NodeRole::kHonest:
      return "honest";
    case NodeRole::kAttacker:
      return "attacker";
  }
  return "unknown";
}

NodeRole Topology::role(NodeId id) const noexcept {
  if (id == sink_id) return NodeRole::kSink;
  return is_attacker[id] ? NodeRole::kAttacker : NodeRole::kHonest;
}

std::vector<Point2D> deploy(const DeploymentConfig& config, RandomStream& rng) {
  config.validate();
  const std::size_t n = config.sensor_count();
  std::vector<Point2D> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Area-correct radial CDF: P(rho <= t) = (t / r)^2.
    const double rho = config.radius * std::sqrt(rng.uniform01());
    const double theta = 2.0 * std::numbers::pi * rng.uniform01();
    points.push_back({rho * std::cos(theta), rho * std::sin(theta)});
  }
  return points;
}

Adjacency build_udg(std::span<const Point2D> positions) {
  // Bucket into unit cells; any neighbor lies in one of the 3x3 surrounding cells.
  auto cell_of = [](Point2D p) {
    return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor(p.x)),
                                                 static_cast<std::int64_t>(std::floor(p.y))};
  };
  auto key = [](std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
  };

  std::unordered_map<std::uint64_t, std::vector<NodeId>> cells;
  for (NodeId id = 0; id < positions.size(); ++id) {
    auto [cx, cy] = cell_of(positions[id]);
    cells[key(cx, cy)].push_back(id);
  }

  Adjacency adjacency(positions.size());
  for (NodeId u = 0; u < positions.size(); ++u) {
    auto [cx, cy] = cell_of(positions[u]);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells.find(key(cx + dx, cy + dy));
        if (it == cells.end()) continue;
        for (NodeId v : it->second) {
          if (v == u) continue;
          const double ex = positions[u].x - positions[v].x;
          const double ey = positions[u].y - positions[v].y;
          if (ex * ex + ey * ey <= 1.0) adjacency[u].push_back(v);
        }
      }
    }
    std::sort(adjacency[u].begin(), adjacency[u].end());
  }
  return adjacency;
}

std::vector<HopCount> compute_hops(const Adjacency& adjacency, NodeId sink_id) {
  std::vector<HopCount> hop(adjacency.size(), kDisconnected);
  if (sink_id >= adjacency.size()) return hop;
  std::deque<NodeId> frontier{sink_id};
  hop[sink_id] = 0;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId v : adjacency[u]) {
      if (hop[v] == kDisconnected) {
        hop[v] = hop[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return hop;
}

namespace {

std::vector<NodeId> place_attackers(std::size_t sensors, std::size_t count, RandomStream& rng) {
  // Partial Fisher-Yates over sensor ids 1..n.
  std::vector<NodeId> pool(sensors);
  for (std::size_t i = 0; i < sensors; ++i) pool[i] = static_cast<NodeId>(i + 1);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(sensors - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Topology make_topology(std::vector<Point2D> positions, std::span<const NodeId> attackers) {
  if (positions.empty()) throw std::invalid_argument("make_topology: no sink position");
  Topology topology;
  topology.positions = std::move(positions);
  topology.sink_id = 0;
  topology.adjacency = build_udg(topology.positions);
  topology.hop = compute_hops(topology.adjacency, topology.sink_id);
  topology.is_attacker.assign(topology.positions.size(), false);
  for (NodeId a : attackers) {
    if (a == topology.sink_id || a >= topology.positions.size()) {
      throw std::invalid_argument("make_topology: invalid attacker id " + std::to_string(a));
    }
    topology.is_attacker[a] = true;
  }
  for (NodeId id = 0; id < topology.positions.size(); ++id) {
    if (topology.is_attacker[id]) topology.attackers.push_back(id);
  }
  return topology;
}

Topology generate_topology(const DeploymentConfig& config) {
  config.validate();
  RandomStream deployment_rng(config.seed, stream::kDeployment);
  for (std::uint32_t attempt = 1; attempt <= config.max_resample_attempts; ++attempt) {
    std::vector<Point2D> positions{{0.0, 0.0}};
    std::vector<Point2D> sensors = deploy(config, deployment_rng);
    positions.insert(positions.end(), sensors.begin(), sensors.end());

    Adjacency adjacency = build_udg(positions);
    std::vector<HopCount> hop = compute_hops(adjacency, 0);
    if (std::find(hop.begin(), hop.end(), kDisconnected) != hop.end()) continue;

    RandomStream placement_rng(config.seed, stream::kAttackerPlacement);
    const auto attackers =
        place_attackers(sensors.size(), config.attacker_count(), placement_rng);

    Topology topology;
    topology.positions = std::move(positions);
    topology.adjacency = std::move(adjacency);
    topology.hop = std::move(hop);
    topology.is_attacker.assign(topology.positions.size(), false);
    for (NodeId a : attackers) topology.is_attacker[a] = true;
    topology.attackers = attackers;
    topology.deployment_attempts = attempt;
    return topology;
  }
  throw DeploymentError("no connected deployment after " +
                        std::to_string(config.max_resample_attempts) +
                        " attempts; density too low for the radius");
}

void write_topology_csv(const Topology& topology, std::ostream& out) {
  out << "id,x,y,hop,role\n";
  for (NodeId id = 0; id < topology.node_count(); ++id) {
    out << id << ',' << format_number(topology.positions[id].x) << ','
        << format_number(topology.positions[id].y) << ',';
    if (topology.hop[id] == kDisconnected) {
      out << "disconnected";
    } else {
      out << topology.hop[id];
    }
    out << ',' << to_string(topology.role(id)) << '\n';
  }
}

}  // namespace mixsim
