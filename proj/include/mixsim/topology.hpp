#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixsim/rng.hpp"

namespace mixsim {

using NodeId = std::uint32_t;
using HopCount = std::uint32_t;

/// Marks a node with no path to the sink.
inline constexpr HopCount kDisconnected = std::numeric_limits<HopCount>::max();

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(Point2D a, Point2D b) noexcept;

struct DeploymentConfig {
  double radius = 8.0;
  double density = 4.0;
  /// Attackers as a percentage of the sensor count.
  double attacker_pct = 10.0;
  std::uint64_t seed = 42;
  std::uint32_t max_resample_attempts = 100;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;

  /// round(pi * r^2 * d). The sink is not counted.
  std::size_t sensor_count() const;

  /// round(attacker_pct / 100 * sensor_count()).
  std::size_t attacker_count() const;
};

/// Raised when no connected deployment was found within the attempt budget.
class DeploymentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Adjacency = std::vector<std::vector<NodeId>>;

enum class NodeRole { kSink, kHonest, kAttacker };

const char* to_string(NodeRole role) noexcept;

/**
 * A static sensor field. Node 0 is the sink at the origin; sensors are
 * numbered 1..n in the order they were drawn.
 */
struct Topology {
  std::vector<Point2D> positions;
  NodeId sink_id = 0;
  Adjacency adjacency;
  std::vector<HopCount> hop;
  /// Sorted ascending.
  std::vector<NodeId> attackers;
  /// Marks attackers by node id; same content as `attackers`.
  std::vector<bool> is_attacker;
  /// Number of deployments drawn before a connected one was found.
  std::uint32_t deployment_attempts = 0;

  std::size_t node_count() const noexcept { return positions.size(); }
  NodeRole role(NodeId id) const noexcept;

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Draws sensor_count() points uniformly over the disc of radius r.
std::vector<Point2D> deploy(const DeploymentConfig& config, RandomStream& rng);

/// Unit disc graph over `positions` (index = node id). Edge iff distance <= 1.
Adjacency build_udg(std::span<const Point2D> positions);

/// Breadth-first hop counts from `sink_id`; unreachable nodes get kDisconnected.
std::vector<HopCount> compute_hops(const Adjacency& adjacency, NodeId sink_id);

/**
 * Deploys until the graph is connected, then places attackers uniformly
 * among the sensors. Deployment and placement use the `deployment` and
 * `attacker-placement` substreams of config.seed.
 *
 * Throws DeploymentError when max_resample_attempts deployments all fail.
 */
Topology generate_topology(const DeploymentConfig& config);

/// Builds a topology from explicit positions (sink first at index 0).
Topology make_topology(std::vector<Point2D> positions, std::span<const NodeId> attackers = {});

/// CSV rows `id,x,y,hop,role` with a header line.
void write_topology_csv(const Topology& topology, std::ostream& out);

}  // namespace mixsim
