#include <gtest/gtest.h>

#include "edgert/session_state.hpp"
#include "oracles/transition_oracle.hpp"

namespace edgert {
namespace {

using namespace std::chrono_literals;

constexpr LogicalTime kNow = 100s;

Tracking in_state(SessionState s, std::optional<Direction> fin_origin = std::nullopt) {
  return {s, kNow + 1s, fin_origin};
}

TEST(OpenTracking, BareSynOpensTcp) {
  Timeouts t;
  auto opened = open_tracking(kProtoTcp, {.syn = true}, kNow, t);
  ASSERT_TRUE(opened);
  EXPECT_EQ(opened->state, SessionState::SynSent);
  EXPECT_EQ(opened->expiry, kNow + 30s);
  EXPECT_FALSE(open_tracking(kProtoTcp, {.ack = true}, kNow, t));
  EXPECT_FALSE(open_tracking(kProtoTcp, {.syn = true, .ack = true}, kNow, t));
  EXPECT_FALSE(open_tracking(kProtoTcp, {}, kNow, t));
}

TEST(OpenTracking, AnyNonTcpPacketOpens) {
  auto opened = open_tracking(kProtoUdp, {}, kNow, Timeouts{});
  ASSERT_TRUE(opened);
  EXPECT_EQ(opened->state, SessionState::Open);
  EXPECT_EQ(opened->expiry, kNow + 60s);
  EXPECT_EQ(open_tracking(kProtoIcmp, {}, kNow, Timeouts{})->state, SessionState::Open);
}

TEST(AdvanceTracking, DefinedTransitions) {
  Timeouts t;
  auto r = advance_tracking(in_state(SessionState::SynSent), kProtoTcp, {.syn = true, .ack = true},
                            Direction::Inbound, kNow, t);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->state, SessionState::SynReceived);

  r = advance_tracking(in_state(SessionState::Established), kProtoTcp, {.rst = true}, Direction::Outbound, kNow, t);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->state, SessionState::Closed);

  EXPECT_FALSE(advance_tracking(in_state(SessionState::SynSent), kProtoTcp, {.ack = true}, Direction::Outbound, kNow, t));
}

TEST(AdvanceTracking, ExpiryFollowsNewState) {
  Timeouts t;
  auto est = advance_tracking(in_state(SessionState::SynReceived), kProtoTcp, {.ack = true}, Direction::Outbound, kNow, t);
  EXPECT_EQ(est->expiry, kNow + 300s);
  auto fin = advance_tracking(*est, kProtoTcp, {.ack = true, .fin = true}, Direction::Inbound, kNow, t);
  EXPECT_EQ(fin->state, SessionState::FinWait);
  EXPECT_EQ(fin->fin_origin, Direction::Inbound);
  EXPECT_EQ(fin->expiry, kNow + 30s);
  auto rst = advance_tracking(*est, kProtoTcp, {.ack = true, .rst = true}, Direction::Inbound, kNow, t);
  EXPECT_EQ(rst->expiry, kNow + 5s);
  auto udp = advance_tracking(in_state(SessionState::Open), kProtoUdp, {}, Direction::Inbound, kNow, t);
  EXPECT_EQ(udp->state, SessionState::Open);
  EXPECT_EQ(udp->expiry, kNow + 60s);
}

TEST(AdvanceTracking, FinFromOtherSideCloses) {
  Timeouts t;
  auto first = advance_tracking(in_state(SessionState::Established), kProtoTcp, {.fin = true}, Direction::Outbound, kNow, t);
  ASSERT_EQ(first->state, SessionState::FinWait);
  auto again = advance_tracking(*first, kProtoTcp, {.fin = true}, Direction::Outbound, kNow, t);
  EXPECT_EQ(again->state, SessionState::FinWait);
  auto closed = advance_tracking(*first, kProtoTcp, {.ack = true, .fin = true}, Direction::Inbound, kNow, t);
  EXPECT_EQ(closed->state, SessionState::Closed);

  // Mirror image: the first FIN came from the inbound side.
  auto mirrored = in_state(SessionState::FinWait, Direction::Inbound);
  EXPECT_EQ(advance_tracking(mirrored, kProtoTcp, {.fin = true}, Direction::Outbound, kNow, t)->state,
            SessionState::Closed);
  EXPECT_EQ(advance_tracking(mirrored, kProtoTcp, {.fin = true}, Direction::Inbound, kNow, t)->state,
            SessionState::FinWait);
}

// Full cross product: 5 TCP states x 16 flag subsets x 2 directions.
TEST(AdvanceTracking, MatchesHandEnumeratedTable) {
  Timeouts t;
  int cases = 0;
  for (auto state : {SessionState::SynSent, SessionState::SynReceived, SessionState::Established,
                     SessionState::FinWait, SessionState::Closed}) {
    for (auto dir : {Direction::Outbound, Direction::Inbound}) {
      for (unsigned bits = 0; bits < 16; ++bits) {
        auto fin_origin = state == SessionState::FinWait ? std::optional(Direction::Outbound) : std::nullopt;
        auto got = advance_tracking(in_state(state, fin_origin), kProtoTcp, TcpFlags::from_bits(bits), dir, kNow, t);
        auto want = oracle::expected_transition(state, dir, bits);
        EXPECT_EQ(got.has_value(), want.has_value())
            << to_string(state) << ' ' << to_string(dir) << ' ' << TcpFlags::from_bits(bits).to_string();
        if (got && want) EXPECT_EQ(got->state, *want);
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 160);
}

TEST(AdvanceTracking, NonTcpStaysOpen) {
  for (auto dir : {Direction::Outbound, Direction::Inbound}) {
    auto r = advance_tracking(in_state(SessionState::Open), kProtoIcmp, {}, dir, kNow, Timeouts{});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->state, SessionState::Open);
  }
}

}  // namespace
}  // namespace edgert
