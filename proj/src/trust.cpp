#include "mixsim/trust.hpp"

#include <algorithm>
#include <string>

#include "mixsim/format.hpp"

namespace mixsim {

double trust_value(const LinkEvidence& e) noexcept {
  const double s = static_cast<double>(e.sent);
  const double r = static_cast<double>(e.received);
  const double c = static_cast<double>(e.captured);
  return (s + r - c + 1.0) / (s + r + c + 1.0);
}

Opinion opinion(const LinkEvidence& e) {
  if (e.sent == 0) throw UndefinedOpinionError("opinion undefined for a link with no sends");
  const double s = static_cast<double>(e.sent);
  const double b = static_cast<double>(e.received) / s;
  const double d = static_cast<double>(e.captured) / s;
  return {b, d, 1.0 - static_cast<double>(e.received + e.captured) / s};
}

void TrustLedger::record_send(NodeId from, NodeId to) { ++links_[key(from, to)].sent; }

LinkEvidence& TrustLedger::existing(const Link& link) {
  auto it = links_.find(key(link.from, link.to));
  if (it == links_.end()) {
    throw LedgerIntegrityError("no sends recorded on link " + std::to_string(link.from) + "->" +
                               std::to_string(link.to));
  }
  return it->second;
}

void TrustLedger::record_delivery(std::span<const Link> path) {
  // Validate first so a failed update leaves the ledger untouched.
  for (const Link& link : path) {
    const LinkEvidence& e = existing(link);
    if (e.received + e.captured + 1 > e.sent) {
      throw LedgerIntegrityError("delivery would exceed sends on link " +
                                 std::to_string(link.from) + "->" + std::to_string(link.to));
    }
  }
  for (const Link& link : path) ++existing(link).received;
}

void TrustLedger::record_capture(std::span<const Link> path) {
  for (const Link& link : path) {
    const LinkEvidence& e = existing(link);
    if (e.received + e.captured + 1 > e.sent) {
      throw LedgerIntegrityError("capture would exceed sends on link " +
                                 std::to_string(link.from) + "->" + std::to_string(link.to));
    }
  }
  for (const Link& link : path) ++existing(link).captured;
}

LinkEvidence TrustLedger::evidence(NodeId from, NodeId to) const noexcept {
  auto it = links_.find(key(from, to));
  return it == links_.end() ? LinkEvidence{} : it->second;
}

std::vector<std::pair<Link, LinkEvidence>> TrustLedger::entries() const {
  std::vector<std::pair<Link, LinkEvidence>> out;
  out.reserve(links_.size());
  for (const auto& [k, e] : links_) {
    out.push_back({Link{static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xffffffffULL)}, e});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.first.from, a.first.to) < std::pair(b.first.from, b.first.to);
  });
  return out;
}

LinkEvidence TrustLedger::totals() const noexcept {
  LinkEvidence sum;
  for (const auto& [k, e] : links_) {
    sum.sent += e.sent;
    sum.received += e.received;
    sum.captured += e.captured;
  }
  return sum;
}

void write_ledger_csv(const TrustLedger& ledger, std::ostream& out) {
  out << "sender,neighbor,s,r,c,trust\n";
  for (const auto& [link, e] : ledger.entries()) {
    out << link.from << ',' << link.to << ',' << e.sent << ',' << e.received << ',' << e.captured
        << ',' << format_number(trust_value(e)) << '\n';
  }
}

}  // namespace mixsim
