#include <gtest/gtest.h>

#include "edgert/qos.hpp"
#include "oracles/match_oracle.hpp"
#include "support/random_world.hpp"

namespace edgert {
namespace {

TEST(QosPolicy, ParsesVoipRule) {
  auto qp = QosPolicy::parse("udp any any any 5060-5061 dscp 46\nany any any any any dscp 0\n");
  ASSERT_EQ(qp.rules().size(), 2u);
  EXPECT_EQ(qp.rules()[0].dscp, 46);
  EXPECT_EQ(qp.rules()[0].match.dst_ports, (PortRange{5060, 5061}));
  EXPECT_EQ(qp.rules()[1].dscp, 0);
}

TEST(QosPolicy, RejectsOutOfRangeDscp) {
  EXPECT_THROW(QosPolicy::parse("tcp any any any 80 dscp 99\n"), ParseError);
  EXPECT_THROW(QosPolicy::parse("tcp any any any 80 tos 9\n"), ParseError);
  EXPECT_THROW(QosPolicy::parse("tcp any any any 80 dscp\n"), ParseError);
}

TEST(QosPolicy, ClassifiesFirstMatchElseZero) {
  auto qp = QosPolicy::parse("udp any any any 5060-5061 dscp 46\n");
  LookupAccounting acct;
  SessionId voip{IpAddress::parse("10.0.0.5"), 7000, IpAddress::parse("198.51.100.9"), 5060, kProtoUdp};
  EXPECT_EQ(qp.classify(voip, acct), 46);
  SessionId web{IpAddress::parse("10.0.0.5"), 7000, IpAddress::parse("198.51.100.9"), 80, kProtoTcp};
  EXPECT_EQ(qp.classify(web, acct), 0);
  EXPECT_EQ(acct.qos_classifications, 2u);
}

TEST(QosPolicy, AgreesWithLinearScanOracle) {
  testing::Rng rng(5);
  const auto lan = Cidr::parse("10.0.0.0/8");
  for (int policy = 0; policy < 300; ++policy) {
    std::vector<QosRule> rules;
    auto n = rng.below(33);
    for (std::uint64_t i = 0; i < n; ++i)
      rules.push_back({testing::random_match(rng, lan), static_cast<std::uint8_t>(rng.below(64))});
    QosPolicy qp(rules);
    for (int q = 0; q < 100; ++q) {
      SessionId s{IpAddress{lan.network().value() + (rng.bits32() & 0xffff)},
                  static_cast<std::uint16_t>(rng.below(65536)),
                  rng.pick(testing::peer_candidates()),
                  rng.pick(std::vector<std::uint16_t>{22, 53, 80, 123, 443, 5060, 5061, 8080}),
                  static_cast<std::uint8_t>(rng.chance(0.5) ? kProtoTcp : kProtoUdp)};
      LookupAccounting acct;
      ASSERT_EQ(qp.classify(s, acct), oracle::first_dscp(rules, s));
      ASSERT_EQ(qp.classify(s, acct), qp.classify(s, acct));
    }
  }
}

}  // namespace
}  // namespace edgert
