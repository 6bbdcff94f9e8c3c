#pragma once

#include <memory>
#include <string_view>

#include "edgert/pipeline.hpp"

namespace edgert::testing {

inline PipelineConfig make_config(std::string_view rules = "accept any any any any any\n",
                                  std::string_view routes = "0.0.0.0/0 203.0.113.1 wan\n10.0.0.0/8 10.0.0.254 lan\n",
                                  std::string_view qos = "") {
  PipelineConfig cfg;
  cfg.rules = std::make_shared<const RuleSet>(RuleSet::parse(rules));
  cfg.routes = std::make_shared<const RoutingTable>(RoutingTable::parse(routes));
  cfg.qos = std::make_shared<const QosPolicy>(QosPolicy::parse(qos));
  return cfg;
}

inline Packet tcp(std::int64_t ts_us, const char* src, std::uint16_t sport, const char* dst, std::uint16_t dport,
                  const char* flags) {
  Packet p;
  p.ts = LogicalTime{ts_us};
  p.sid = {IpAddress::parse(src), sport, IpAddress::parse(dst), dport, kProtoTcp};
  p.flags = *TcpFlags::try_parse(flags);
  return p;
}

inline Packet udp(std::int64_t ts_us, const char* src, std::uint16_t sport, const char* dst, std::uint16_t dport) {
  Packet p;
  p.ts = LogicalTime{ts_us};
  p.sid = {IpAddress::parse(src), sport, IpAddress::parse(dst), dport, kProtoUdp};
  return p;
}

inline std::optional<DropReason> drop_reason(const Verdict& v) {
  if (auto* d = v.as_dropped()) return d->reason;
  return std::nullopt;
}

}  // namespace edgert::testing
