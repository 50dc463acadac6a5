#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mixsim/topology.hpp"

namespace mixsim {

/// Counters one node keeps about one neighbor it forwards to.
struct LinkEvidence {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;  // reached the sink
  std::uint64_t captured = 0;  // swallowed by an attacker downstream

  friend bool operator==(const LinkEvidence&, const LinkEvidence&) = default;
};

struct Opinion {
  double belief = 0.0;
  double disbelief = 0.0;
  double uncertainty = 1.0;
};

/// A directed slide from `from` to `to`.
struct Link {
  NodeId from = 0;
  NodeId to = 0;

  friend bool operator==(const Link&, const Link&) = default;
};

/// An update would break received + captured <= sent.
class LedgerIntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// opinion() was asked for a link with no sends.
class UndefinedOpinionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (s + r - c + 1) / (s + r + c + 1), always in (0, 1].
double trust_value(const LinkEvidence& e) noexcept;

/// (r/s, c/s, 1 - (r+c)/s). Throws UndefinedOpinionError when s == 0.
Opinion opinion(const LinkEvidence& e);

class TrustLedger {
 public:
  void record_send(NodeId from, NodeId to);
  /// Credits every link on the path of a message that reached the sink.
  void record_delivery(std::span<const Link> path);
  /// Debits every link on the path of a captured message, the final link included.
  void record_capture(std::span<const Link> path);

  /// Evidence of `from` about `to`; (0,0,0) when never used.
  LinkEvidence evidence(NodeId from, NodeId to) const noexcept;
  double trust(NodeId from, NodeId to) const noexcept { return trust_value(evidence(from, to)); }

  std::size_t link_count() const noexcept { return links_.size(); }

  /// Entries sorted by (from, to).
  std::vector<std::pair<Link, LinkEvidence>> entries() const;

  /// Sums over all links.
  LinkEvidence totals() const noexcept;

 private:
  static std::uint64_t key(NodeId from, NodeId to) noexcept {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }
  LinkEvidence& existing(const Link& link);

  std::unordered_map<std::uint64_t, LinkEvidence> links_;
};

/// CSV rows `sender,neighbor,s,r,c,trust` with a header line.
void write_ledger_csv(const TrustLedger& ledger, std::ostream& out);

}  // namespace mixsim
