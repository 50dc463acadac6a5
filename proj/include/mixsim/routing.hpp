#pragma once

#include <concepts>
#include <optional>
#include <span>
#include <variant>

#include "mixsim/topology.hpp"

namespace mixsim {

/// Energy in abstract units: a slide costs 1, an ejection from hop h costs h^2.
using Energy = double;

struct NodeSelfState {
  NodeId id = 0;
  HopCount hop = 1;
  Energy consumed_energy = 0.0;
};

/// What a neighbor advertises. Attackers advertise fabricated values.
struct NeighborView {
  NodeId id = 0;
  HopCount advertised_hop = 0;
  Energy advertised_consumed_energy = 0.0;

  friend bool operator==(const NeighborView&, const NeighborView&) = default;
};

struct Slide {
  NodeId target = 0;
  friend bool operator==(const Slide&, const Slide&) = default;
};

/// Direct long-range transmission to the sink.
struct Eject {
  friend bool operator==(const Eject&, const Eject&) = default;
};

using RouteDecision = std::variant<Slide, Eject>;

/// Anything that yields uniform draws on [0, 1) when called.
template <class F>
concept UnitDrawSource = requires(F& f) {
  { f() } -> std::convertible_to<double>;
};

constexpr Energy ejection_cost(const NodeSelfState& self) noexcept {
  return static_cast<Energy>(self.hop) * static_cast<Energy>(self.hop);
}

namespace detail {

/// Body of the MIX neighbor loop for a single neighbor.
template <UnitDrawSource TieDraw>
void consider_candidate(const NodeSelfState& self, const NeighborView& m,
                        std::optional<NeighborView>& best, TieDraw& tie) {
  if (m.advertised_hop >= self.hop) return;
  if (m.advertised_consumed_energy >= self.consumed_energy + ejection_cost(self)) return;
  if (!best) {
    best = m;
  } else if (m.advertised_consumed_energy < best->advertised_consumed_energy) {
    best = m;
  } else if (m.advertised_consumed_energy == best->advertised_consumed_energy) {
    if (static_cast<double>(tie()) < 0.5) best = m;
  }
}

inline RouteDecision finish(const std::optional<NeighborView>& best) {
  if (best) return Slide{best->id};
  return Eject{};
}

}  // namespace detail

/**
 * MIX next-hop rule. Neighbors must be given in ascending id order.
 *
 * A neighbor is a candidate when it advertises a strictly lower hop and a
 * consumed energy below energy(self) + hop(self)^2. The candidate with the
 * lowest energy wins. On an energy tie the later neighbor replaces the
 * current candidate with probability 1/2, one `tie` draw per tie.
 * Without candidates the message is ejected.
 */
template <UnitDrawSource TieDraw>
RouteDecision mix_next_hop(const NodeSelfState& self, std::span<const NeighborView> neighbors,
                           TieDraw&& tie) {
  std::optional<NeighborView> best;
  for (const NeighborView& m : neighbors) detail::consider_candidate(self, m, best, tie);
  return detail::finish(best);
}

/**
 * trustMIX: MIX with a trust gate in front of every neighbor.
 *
 * For each neighbor one draw x is taken from `gate`, before any MIX test.
 * When x > trust_of(m.id) the neighbor is skipped. Since x < 1, a trust of
 * 1 never gates anything out and the result matches mix_next_hop.
 */
template <class TrustFn, UnitDrawSource GateDraw, UnitDrawSource TieDraw>
  requires std::invocable<TrustFn&, NodeId>
RouteDecision trustmix_next_hop(const NodeSelfState& self,
                                std::span<const NeighborView> neighbors, TrustFn&& trust_of,
                                GateDraw&& gate, TieDraw&& tie) {
  std::optional<NeighborView> best;
  for (const NeighborView& m : neighbors) {
    const double x = static_cast<double>(gate());
    if (x > static_cast<double>(trust_of(m.id))) continue;
    detail::consider_candidate(self, m, best, tie);
  }
  return detail::finish(best);
}

}  // namespace mixsim
