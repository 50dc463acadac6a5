#pragma once

#include "mixsim/message.hpp"
#include "mixsim/routing.hpp"
#include "mixsim/topology.hpp"
#include "mixsim/trust.hpp"

namespace mixsim {

/// The fixed lie a sinkhole tells its neighbors.
struct AttackerProfile {
  NodeId node_id = 0;
  HopCount advertised_hop = 0;
  Energy advertised_consumed_energy = 0.0;

  NeighborView view() const noexcept { return {node_id, advertised_hop, advertised_consumed_energy}; }
};

/**
 * Advertised state of attacker `attacker`: one hop below its lowest neighbor
 * (clamped at 0) and zero consumed energy. Throws std::invalid_argument if
 * the node is not an attacker of `topology`.
 */
AttackerProfile fabricate_view(NodeId attacker, const Topology& topology);

/// Profiles for every attacker, indexed by node id (unused slots are default).
std::vector<AttackerProfile> fabricate_all(const Topology& topology);

struct CaptureEvent {
  NodeId attacker = 0;
  MessageId message = 0;
  Round round = 0;
  /// Links debited in the ledger.
  std::size_t path_length = 0;
};

/**
 * Swallows a message that was just slid to `attacker`: marks it captured in
 * `round` and debits every link of its path in `ledger`. The message's last
 * link must end at the attacker.
 */
CaptureEvent capture(NodeId attacker, Message& message, Round round, TrustLedger& ledger);

}  // namespace mixsim
