#include "mixsim/adversary.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mixsim {

AttackerProfile fabricate_view(NodeId attacker, const Topology& topology) {
  if (attacker >= topology.node_count() || !topology.is_attacker[attacker]) {
    throw std::invalid_argument("fabricate_view: node " + std::to_string(attacker) +
                                " is not an attacker");
  }
  HopCount lowest = kDisconnected;
  for (NodeId m : topology.adjacency[attacker]) lowest = std::min(lowest, topology.hop[m]);
  const HopCount advertised = (lowest == kDisconnected || lowest == 0) ? 0 : lowest - 1;
  return {attacker, advertised, 0.0};
}

std::vector<AttackerProfile> fabricate_all(const Topology& topology) {
  std::vector<AttackerProfile> profiles(topology.node_count());
  for (NodeId a : topology.attackers) profiles[a] = fabricate_view(a, topology);
  return profiles;
}

CaptureEvent capture(NodeId attacker, Message& message, Round round, TrustLedger& ledger) {
  if (message.fate != Fate::kInFlight) {
    throw std::logic_error("capture: message " + std::to_string(message.id) + " already settled");
  }
  if (message.path.empty() || message.path.back().to != attacker) {
    throw std::logic_error("capture: message " + std::to_string(message.id) +
                           " was not slid to attacker " + std::to_string(attacker));
  }
  ledger.record_capture(message.path);
  message.fate = Fate::kCaptured;
  message.fate_round = round;
  return {attacker, message.id, round, message.path.size()};
}

}  // namespace mixsim
