#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "edgert/session_table.hpp"
#include "support/random_world.hpp"

namespace edgert {
namespace {

using namespace std::chrono_literals;

IntegratedEntry entry(std::uint16_t lan_port, std::uint16_t gwy_port, LogicalTime expiry,
                      Endpoint ext = {IpAddress(198, 51, 100, 9), 80}) {
  IntegratedEntry e;
  e.lan = {IpAddress(10, 0, 0, 5), lan_port};
  e.gwy = {IpAddress(192, 0, 2, 1), gwy_port};
  e.ext = ext;
  e.ip_proto = kProtoTcp;
  e.track = {SessionState::Established, expiry, std::nullopt};
  e.dscp = 10;
  return e;
}

TEST(SessionTable, InsertThenBothLookupsHit) {
  SessionTable t;
  auto e = entry(1200, 40000, 100s);
  ASSERT_EQ(t.insert(e), InsertStatus::Ok);
  LookupAccounting acct;
  auto* out = t.lookup_outbound(e.outbound_key(), 50s, acct);
  ASSERT_NE(out, nullptr);
  EXPECT_EQ(*out, e);
  auto* in = t.lookup_inbound(e.inbound_key(), 50s, acct);
  EXPECT_EQ(in, out);
  EXPECT_EQ(acct.session_lookups, 2u);
}

TEST(SessionTable, ExpiredEntryMissesAndIsRemoved) {
  SessionTable t;
  auto e = entry(1200, 40000, 100s);
  ASSERT_EQ(t.insert(e), InsertStatus::Ok);
  LookupAccounting acct;
  EXPECT_EQ(t.lookup_outbound(e.outbound_key(), 100s, acct), nullptr);
  EXPECT_EQ(t.size(), 0u);
  EXPECT_EQ(t.lookup_inbound(e.inbound_key(), 0s, acct), nullptr);
  EXPECT_EQ(acct.session_lookups, 2u);
  EXPECT_TRUE(t.consistent());
}

TEST(SessionTable, MissOnEmptyTableStillCounts) {
  SessionTable t;
  LookupAccounting acct;
  EXPECT_EQ(t.lookup_outbound(entry(1, 1, 1s).outbound_key(), 0s, acct), nullptr);
  EXPECT_EQ(t.lookup_inbound(entry(1, 1, 1s).inbound_key(), 0s, acct), nullptr);
  EXPECT_EQ(acct.session_lookups, 2u);
}

TEST(SessionTable, SharedPeerDistinctGatewayPorts) {
  SessionTable t;
  auto a = entry(1200, 40000, 100s);
  auto b = entry(1201, 40001, 100s);
  ASSERT_EQ(t.insert(a), InsertStatus::Ok);
  ASSERT_EQ(t.insert(b), InsertStatus::Ok);
  LookupAccounting acct;
  EXPECT_EQ(t.lookup_inbound(a.inbound_key(), 0s, acct)->lan.port, 1200);
  EXPECT_EQ(t.lookup_inbound(b.inbound_key(), 0s, acct)->lan.port, 1201);
}

TEST(SessionTable, DuplicateAndFull) {
  SessionTable t(2);
  auto a = entry(1200, 40000, 100s);
  ASSERT_EQ(t.insert(a), InsertStatus::Ok);
  EXPECT_EQ(t.insert(a), InsertStatus::DuplicateKey);
  auto same_gateway = entry(1300, 40000, 100s);
  EXPECT_EQ(t.insert(same_gateway), InsertStatus::DuplicateKey);
  ASSERT_EQ(t.insert(entry(1201, 40001, 100s)), InsertStatus::Ok);
  EXPECT_EQ(t.insert(entry(1202, 40002, 100s)), InsertStatus::TableFull);
  EXPECT_FALSE(t.has_room(50s));
  EXPECT_TRUE(t.has_room(100s));  // sweeping makes room
  EXPECT_EQ(t.size(), 0u);
}

TEST(SessionTable, Sweep) {
  SessionTable t;
  ASSERT_EQ(t.insert(entry(1, 1, 10s)), InsertStatus::Ok);
  ASSERT_EQ(t.insert(entry(2, 2, 20s)), InsertStatus::Ok);
  ASSERT_EQ(t.insert(entry(3, 3, 30s)), InsertStatus::Ok);
  EXPECT_EQ(t.sweep_expired(20s), 2u);
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.sweep_expired(20s), 0u);
  SessionTable empty;
  EXPECT_EQ(empty.sweep_expired(1000s), 0u);
}

TEST(SessionTable, ReresolveNextHops) {
  auto routes = std::make_shared<RoutingTable>(RoutingTable::parse(
      "0.0.0.0/0 203.0.113.1 wan\n10.0.0.0/8 10.0.0.254 lan\n"));
  SessionTable t;
  auto e = entry(1200, 40000, 100s);
  LookupAccounting scratch;
  e.ext_next_hop = routes->lookup(e.ext.addr, scratch)->hop();
  e.lan_next_hop = routes->lookup(e.lan.addr, scratch)->hop();
  ASSERT_EQ(t.insert(e), InsertStatus::Ok);
  auto other = entry(1201, 40001, 100s, {IpAddress(8, 8, 8, 8), 53});
  other.ext_next_hop = e.ext_next_hop;
  other.lan_next_hop = e.lan_next_hop;
  ASSERT_EQ(t.insert(other), InsertStatus::Ok);

  auto r = t.reresolve_next_hops(*routes);
  EXPECT_EQ(r.updated, 0u);
  EXPECT_EQ(r.evicted, 0u);

  auto flipped = RoutingTable::parse(
      "0.0.0.0/0 203.0.113.1 wan\n198.51.100.0/24 203.0.113.2 wan2\n10.0.0.0/8 10.0.0.254 lan\n");
  r = t.reresolve_next_hops(flipped);
  EXPECT_EQ(r.updated, 1u);
  LookupAccounting acct;
  EXPECT_EQ(t.lookup_outbound(e.outbound_key(), 0s, acct)->ext_next_hop->addr, IpAddress(203, 0, 113, 2));

  auto no_default = RoutingTable::parse("198.51.100.0/24 203.0.113.2 wan2\n10.0.0.0/8 10.0.0.254 lan\n");
  r = t.reresolve_next_hops(no_default);
  EXPECT_EQ(r.evicted, 1u);
  EXPECT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.consistent());
}

TEST(SessionTable, DumpCsvHasHeaderAndRow) {
  SessionTable t;
  ASSERT_EQ(t.insert(entry(1200, 40000, 100s)), InsertStatus::Ok);
  std::ostringstream out;
  t.dump_csv(out);
  EXPECT_EQ(out.str(),
            "lan_addr,lan_port,gwy_addr,gwy_port,ext_addr,ext_port,ip_proto,state,dscp,ext_next_hop,lan_next_hop,expiry\n"
            "10.0.0.5,1200,192.0.2.1,40000,198.51.100.9,80,6,ESTABLISHED,10,-,-,100\n");
}

TEST(SessionTable, InboundKeyLiveReclaimsStaleOwner) {
  SessionTable t;
  auto e = entry(1200, 40000, 10s);
  ASSERT_EQ(t.insert(e), InsertStatus::Ok);
  EXPECT_TRUE(t.inbound_key_live(e.inbound_key(), 5s));
  EXPECT_FALSE(t.inbound_key_live(e.inbound_key(), 10s));
  EXPECT_EQ(t.size(), 0u);
}

// Random insert/lookup/sweep sequences keep both indexes over the same set
// and never return an expired entry.
TEST(SessionTable, DualIndexConsistencyProperty) {
  testing::Rng rng(31);
  for (int run = 0; run < 30; ++run) {
    SessionTable t(rng.between(1, 40));
    LogicalTime now{0};
    for (int op = 0; op < 3000; ++op) {
      now += std::chrono::milliseconds(rng.below(20));
      auto lan_port = static_cast<std::uint16_t>(rng.below(30));
      auto gwy_port = static_cast<std::uint16_t>(rng.below(30));
      auto e = entry(lan_port, gwy_port, now + std::chrono::milliseconds(rng.between(1, 500)));
      LookupAccounting acct;
      switch (rng.below(4)) {
        case 0:
          if (t.has_room(now)) (void)t.insert(e);
          break;
        case 1:
          if (auto* hit = t.lookup_outbound(e.outbound_key(), now, acct)) ASSERT_GT(hit->track.expiry, now);
          break;
        case 2:
          if (auto* hit = t.lookup_inbound(e.inbound_key(), now, acct)) ASSERT_GT(hit->track.expiry, now);
          break;
        default:
          t.sweep_expired(now);
      }
      ASSERT_LE(t.size(), t.capacity());
      ASSERT_TRUE(t.consistent());
    }
  }
}

TEST(AdvanceState, UpdatesEntryTracking) {
  auto e = entry(1200, 40000, 100s);
  e.track.state = SessionState::SynSent;
  Packet synack;
  synack.flags = {.syn = true, .ack = true};
  auto next = advance_state(e, synack, Direction::Inbound, 50s, Timeouts{});
  ASSERT_TRUE(next);
  EXPECT_EQ(next->track.state, SessionState::SynReceived);
  EXPECT_EQ(next->lan, e.lan);
  Packet ack;
  ack.flags = {.ack = true};
  EXPECT_FALSE(advance_state(e, ack, Direction::Outbound, 50s, Timeouts{}));
}

}  // namespace
}  // namespace edgert
