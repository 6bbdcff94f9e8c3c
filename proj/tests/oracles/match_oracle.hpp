#pragma once

// Linear-scan first-match oracles for filter rules and QoS rules. Prefix
// membership is tested arithmetically (range containment), not with masks.

#include <cstdint>
#include <optional>
#include <utility>

#include "edgert/filter.hpp"
#include "edgert/qos.hpp"

namespace edgert::oracle {

inline bool in_prefix(const Cidr& c, IpAddress a) {
  std::uint64_t span = std::uint64_t{1} << (32 - c.length());
  std::uint64_t lo = c.network().value();
  return a.value() >= lo && a.value() < lo + span;
}

inline bool rule_matches(const FlowMatch& m, const SessionId& sid) {
  if (m.proto.has_value() && m.proto.value() != sid.ip_proto) return false;
  if (!in_prefix(m.src, sid.src_addr) || !in_prefix(m.dst, sid.dst_addr)) return false;
  if (sid.src_port < m.src_ports.lo || sid.src_port > m.src_ports.hi) return false;
  if (sid.dst_port < m.dst_ports.lo || sid.dst_port > m.dst_ports.hi) return false;
  return true;
}

inline std::pair<Action, std::optional<std::size_t>> first_match(const std::vector<FilterRule>& rules,
                                                                 const SessionId& sid) {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rule_matches(rules[i].match, sid)) return {rules[i].action, i};
  return {Action::Drop, std::nullopt};
}

inline std::uint8_t first_dscp(const std::vector<QosRule>& rules, const SessionId& sid) {
  for (const auto& r : rules)
    if (rule_matches(r.match, sid)) return r.dscp;
  return 0;
}

}  // namespace edgert::oracle
