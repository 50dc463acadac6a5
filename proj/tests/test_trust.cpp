#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mixsim/rng.hpp"
#include "mixsim/trust.hpp"

using namespace mixsim;

TEST_CASE("trust values") {
  CHECK(trust_value({0, 0, 0}) == 1.0);
  CHECK(trust_value({1, 0, 1}) == 1.0 / 3.0);
  CHECK(trust_value({10, 10, 0}) == 1.0);
  CHECK(trust_value({10, 0, 10}) == 1.0 / 21.0);
}

TEST_CASE("trust lies in (0, 1] and is monotone on small grids") {
  for (std::uint64_t s = 0; s <= 20; ++s) {
    for (std::uint64_t r = 0; r <= s; ++r) {
      for (std::uint64_t c = 0; r + c <= s; ++c) {
        const double t = trust_value({s, r, c});
        REQUIRE(t > 0.0);
        REQUIRE(t <= 1.0);
        if (r + c + 1 <= s) {
          REQUIRE(trust_value({s, r, c + 1}) < t);
          REQUIRE(trust_value({s, r + 1, c}) >= t);
        }
      }
    }
  }
}

TEST_CASE("trust equals its opinion form") {
  RandomStream rng(8);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t s = 1 + rng.below(1000);
    const std::uint64_t r = rng.below(s + 1);
    const std::uint64_t c = rng.below(s - r + 1);
    const LinkEvidence e{s, r, c};
    const Opinion o = opinion(e);
    const double inv = 1.0 / static_cast<double>(s);
    const double form = (2 * o.belief + o.uncertainty + inv) /
                        (2 * o.belief + 2 * o.disbelief + o.uncertainty + inv);
    REQUIRE(std::abs(form - trust_value(e)) <= 1e-12);
    REQUIRE(std::abs(o.belief + o.disbelief + o.uncertainty - 1.0) <= 1e-12);
  }
}

TEST_CASE("trust approaches its limit form") {
  const std::uint64_t s = 1000000;
  for (auto [b, d] : {std::pair{0.5, 0.25}, {0.9, 0.05}, {0.1, 0.8}, {0.0, 1.0}, {1.0, 0.0}}) {
    const auto r = static_cast<std::uint64_t>(b * s);
    const auto c = static_cast<std::uint64_t>(d * s);
    const double u = 1.0 - b - d;
    const double limit = (2 * b + u) / (2 * b + 2 * d + u);
    CHECK(std::abs(trust_value({s, r, c}) - limit) <= 1e-5);
  }
}

TEST_CASE("opinions") {
  const Opinion a = opinion({4, 2, 1});
  CHECK(a.belief == 0.5);
  CHECK(a.disbelief == 0.25);
  CHECK(a.uncertainty == 0.25);

  const Opinion b = opinion({1, 0, 0});
  CHECK(b.belief == 0.0);
  CHECK(b.disbelief == 0.0);
  CHECK(b.uncertainty == 1.0);

  const Opinion c = opinion({2, 2, 0});
  CHECK(c.belief == 1.0);
  CHECK(c.uncertainty == 0.0);

  CHECK_THROWS_AS(opinion({0, 0, 0}), UndefinedOpinionError);
}

TEST_CASE("ledger counters") {
  TrustLedger ledger;
  CHECK(ledger.evidence(1, 2) == LinkEvidence{});

  ledger.record_send(1, 2);
  CHECK(ledger.evidence(1, 2) == LinkEvidence{1, 0, 0});
  ledger.record_send(1, 2);
  ledger.record_send(1, 2);
  CHECK(ledger.evidence(1, 2) == LinkEvidence{3, 0, 0});
  // Direction matters.
  CHECK(ledger.evidence(2, 1) == LinkEvidence{});

  const std::vector<Link> one{{1, 2}};
  ledger.record_delivery(one);
  CHECK(ledger.evidence(1, 2) == LinkEvidence{3, 1, 0});
}

TEST_CASE("delivery and capture update the whole path") {
  TrustLedger ledger;
  const std::vector<Link> path{{1, 2}, {2, 3}};
  for (const Link& l : path) ledger.record_send(l.from, l.to);
  ledger.record_delivery(path);
  CHECK(ledger.evidence(1, 2) == LinkEvidence{1, 1, 0});
  CHECK(ledger.evidence(2, 3) == LinkEvidence{1, 1, 0});

  ledger.record_delivery(std::vector<Link>{});
  CHECK(ledger.totals() == LinkEvidence{2, 2, 0});

  const std::vector<Link> captured{{1, 2}, {2, 9}};
  for (const Link& l : captured) ledger.record_send(l.from, l.to);
  ledger.record_capture(captured);
  CHECK(ledger.evidence(1, 2) == LinkEvidence{2, 1, 1});
  CHECK(ledger.evidence(2, 9) == LinkEvidence{1, 0, 1});

  SUBCASE("five-link path") {
    TrustLedger l5;
    std::vector<Link> p;
    for (NodeId i = 0; i < 5; ++i) {
      p.push_back({i, i + 1});
      l5.record_send(i, i + 1);
    }
    l5.record_delivery(p);
    CHECK(l5.totals().received == 5);
  }
  SUBCASE("repeated captures accumulate") {
    TrustLedger lc;
    const std::vector<Link> p{{4, 5}};
    for (int i = 0; i < 5; ++i) {
      lc.record_send(4, 5);
      lc.record_capture(p);
    }
    CHECK(lc.evidence(4, 5).captured == 5);
  }
}

TEST_CASE("ledger refuses fates beyond sends") {
  TrustLedger ledger;
  const std::vector<Link> path{{1, 2}};
  CHECK_THROWS_AS(ledger.record_delivery(path), LedgerIntegrityError);
  ledger.record_send(1, 2);
  ledger.record_capture(path);
  CHECK_THROWS_AS(ledger.record_delivery(path), LedgerIntegrityError);

  // A failing multi-link update leaves every link untouched.
  ledger.record_send(2, 3);
  const std::vector<Link> mixed{{2, 3}, {1, 2}};
  CHECK_THROWS_AS(ledger.record_delivery(mixed), LedgerIntegrityError);
  CHECK(ledger.evidence(2, 3) == LinkEvidence{1, 0, 0});
}

TEST_CASE("ledger CSV dump") {
  TrustLedger ledger;
  ledger.record_send(3, 1);
  ledger.record_send(1, 2);
  ledger.record_capture(std::vector<Link>{{1, 2}});
  std::ostringstream out;
  write_ledger_csv(ledger, out);
  CHECK(out.str() == "sender,neighbor,s,r,c,trust\n1,2,1,0,1,0.3333333333333333\n3,1,1,0,0,1\n");
}
