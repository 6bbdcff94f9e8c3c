#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgert/packet.hpp"
#include "edgert/verdict.hpp"

namespace edgert {

// Inclusive port range; the default matches every port.
struct PortRange {
  std::uint16_t lo = 0;
  std::uint16_t hi = 65535;

  // "any", "N" or "N-M".
  static PortRange parse(std::string_view text);

  constexpr bool contains(std::uint16_t port) const { return lo <= port && port <= hi; }
  constexpr bool is_any() const { return lo == 0 && hi == 65535; }
  std::string to_string() const;

  constexpr bool operator==(const PortRange&) const = default;
};

// Five-dimension matcher shared by filter rules and QoS rules.
struct FlowMatch {
  std::optional<std::uint8_t> proto;  // empty = any
  Cidr src;
  PortRange src_ports;
  Cidr dst;
  PortRange dst_ports;

  bool matches(const SessionId& sid) const {
    return (!proto || *proto == sid.ip_proto) && src.contains(sid.src_addr) &&
           src_ports.contains(sid.src_port) && dst.contains(sid.dst_addr) &&
           dst_ports.contains(sid.dst_port);
  }

  // Parses `<proto> <src_cidr|any> <src_ports|any> <dst_cidr|any> <dst_ports|any>`.
  static FlowMatch parse(std::span<const std::string_view> cols);
  std::string to_string() const;

  bool operator==(const FlowMatch&) const = default;
};

enum class Action : std::uint8_t { Accept, Drop };

std::string_view to_string(Action a);

struct FilterRule {
  Action action = Action::Drop;
  FlowMatch match;

  bool operator==(const FilterRule&) const = default;
};

struct RuleMatch {
  Action action;
  std::optional<std::size_t> index;  // empty when the default action applied
  std::size_t scanned = 0;
};

// Ordered first-match rule list with an implicit default of Drop.
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<FilterRule> rules) : rules_(std::move(rules)) {}

  // One rule per line: `<action> <proto> <src> <src_ports> <dst> <dst_ports>`.
  static RuleSet parse(std::string_view text);

  // Counts one rule evaluation, plus the rules touched in rules_scanned.
  RuleMatch evaluate(const SessionId& sid, LookupAccounting& acct) const;

  static constexpr Action default_action() { return Action::Drop; }
  const std::vector<FilterRule>& rules() const { return rules_; }

 private:
  std::vector<FilterRule> rules_;
};

}  // namespace edgert
