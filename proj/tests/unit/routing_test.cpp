#include <gtest/gtest.h>

#include "edgert/routing.hpp"
#include "oracles/lpm_oracle.hpp"
#include "support/random_world.hpp"

namespace edgert {
namespace {

RoutingTable three_level() {
  return RoutingTable::parse(
      "0.0.0.0/0 192.0.2.1 r1\n"
      "10.0.0.0/8 192.0.2.2 r2\n"
      "10.1.0.0/16 192.0.2.3 r3\n");
}

TEST(RoutingTable, ParsesTwoEntries) {
  auto rt = RoutingTable::parse("0.0.0.0/0 203.0.113.1 wan\n10.0.0.0/8 10.0.0.254 lan\n");
  EXPECT_EQ(rt.size(), 2u);
  EXPECT_EQ(rt.entries()[1].iface, "lan");
}

TEST(RoutingTable, RejectsDuplicatesAndBadPrefixes) {
  try {
    RoutingTable::parse("10.0.0.0/8 1.1.1.1 a\n# c\n10.0.0.0/8 2.2.2.2 b\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(RoutingTable::parse("10.0.0.0/33 1.1.1.1 a\n"), ParseError);
  EXPECT_THROW(RoutingTable::parse("10.0.0.0/8 1.1.1.1\n"), ParseError);
}

TEST(RoutingTable, LongestPrefixWins) {
  auto rt = three_level();
  LookupAccounting acct;
  EXPECT_EQ(rt.lookup(IpAddress::parse("10.1.5.5"), acct)->iface, "r3");
  EXPECT_EQ(rt.lookup(IpAddress::parse("10.2.0.1"), acct)->iface, "r2");
  EXPECT_EQ(rt.lookup(IpAddress::parse("192.0.2.7"), acct)->iface, "r1");
  EXPECT_EQ(acct.route_lookups, 3u);
}

TEST(RoutingTable, NoCoveringPrefix) {
  auto rt = RoutingTable::parse("10.0.0.0/8 192.0.2.2 r2\n");
  LookupAccounting acct;
  EXPECT_EQ(rt.lookup(IpAddress::parse("8.8.8.8"), acct), nullptr);
  EXPECT_EQ(acct.route_lookups, 1u);
}

TEST(RoutingTable, AgreesWithBruteForceOnRandomTables) {
  testing::Rng rng(2024);
  for (int table = 0; table < 200; ++table) {
    std::vector<RouteEntry> entries;
    std::vector<Cidr> seen;
    auto n = rng.between(0, 256);
    IpAddress anchor{rng.bits32()};
    for (std::uint64_t i = 0; i < n; ++i) {
      int len = static_cast<int>(rng.below(33));
      std::uint32_t noise = len == 32 ? 0 : rng.bits32() >> len;
      IpAddress base = rng.chance(0.7) ? IpAddress{anchor.value() ^ noise} : IpAddress{rng.bits32()};
      Cidr prefix(base, len);
      if (std::find(seen.begin(), seen.end(), prefix) != seen.end()) continue;
      seen.push_back(prefix);
      entries.push_back({prefix, IpAddress{rng.bits32()}, "if" + std::to_string(i)});
    }
    RoutingTable rt(entries);
    for (int q = 0; q < 50; ++q) {
      IpAddress dst = rng.chance(0.7) ? IpAddress{anchor.value() ^ (rng.bits32() >> rng.below(32))} : IpAddress{rng.bits32()};
      LookupAccounting acct;
      const RouteEntry* got = rt.lookup(dst, acct);
      auto want = oracle::brute_force_lpm(entries, dst);
      ASSERT_EQ(got != nullptr, want.has_value());
      if (got) EXPECT_EQ(*got, *want);
    }
  }
}

}  // namespace
}  // namespace edgert
