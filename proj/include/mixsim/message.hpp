#pragma once

#include <cstdint>
#include <vector>

#include "mixsim/trust.hpp"

namespace mixsim {

using MessageId = std::uint64_t;
using Round = std::uint64_t;

enum class Fate { kInFlight, kDelivered, kCaptured };

/// One sensed event travelling towards the sink.
struct Message {
  MessageId id = 0;
  NodeId origin = 0;
  Round birth_round = 0;
  /// Slides in order; an ejection to the sink is not a link.
  std::vector<Link> path;
  Fate fate = Fate::kInFlight;
  /// Round of delivery or capture; meaningful once fate != kInFlight.
  Round fate_round = 0;

  /// Node currently holding the message.
  NodeId holder() const noexcept { return path.empty() ? origin : path.back().to; }
};

}  // namespace mixsim
