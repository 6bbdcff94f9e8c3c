#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "edgert/packet.hpp"

namespace edgert {

// Per-packet count of table consultations. Every lookup operation takes one
// of these by reference and bumps its own field by exactly one per call.
struct LookupAccounting {
  std::uint64_t nat_lookups = 0;
  std::uint64_t session_lookups = 0;
  std::uint64_t rule_evals = 0;
  std::uint64_t rules_scanned = 0;
  std::uint64_t qos_classifications = 0;
  std::uint64_t route_lookups = 0;

  // rules_scanned measures scan depth, not a consultation, so it is excluded.
  constexpr std::uint64_t table_consultations() const {
    return nat_lookups + session_lookups + rule_evals + qos_classifications + route_lookups;
  }

  LookupAccounting& operator+=(const LookupAccounting& o) {
    nat_lookups += o.nat_lookups;
    session_lookups += o.session_lookups;
    rule_evals += o.rule_evals;
    rules_scanned += o.rules_scanned;
    qos_classifications += o.qos_classifications;
    route_lookups += o.route_lookups;
    return *this;
  }

  constexpr bool operator==(const LookupAccounting&) const = default;
};

std::string to_string(const LookupAccounting& a);

enum class DropReason : std::uint8_t {
  RuleDenied,
  StateViolation,
  NoRoute,
  NatExhausted,
  TableFull,
  TtlExpired,
  InboundNoSession,
};

inline constexpr std::size_t kDropReasonCount = 7;
inline constexpr std::array<DropReason, kDropReasonCount> kAllDropReasons = {
    DropReason::RuleDenied, DropReason::StateViolation,   DropReason::NoRoute,
    DropReason::NatExhausted, DropReason::TableFull, DropReason::TtlExpired,
    DropReason::InboundNoSession,
};

std::string_view to_string(DropReason r);

struct NextHop {
  IpAddress addr;
  std::string iface;

  bool operator==(const NextHop&) const = default;
};

struct Forwarded {
  NextHop hop;
  Packet emitted;

  bool operator==(const Forwarded&) const = default;
};

struct Dropped {
  DropReason reason;

  bool operator==(const Dropped&) const = default;
};

enum class SessionOutcome : std::uint8_t { NotConsulted, Hit, Miss };

struct Verdict {
  std::variant<Forwarded, Dropped> outcome;
  LookupAccounting lookups;
  SessionOutcome session = SessionOutcome::NotConsulted;

  bool forwarded() const { return std::holds_alternative<Forwarded>(outcome); }
  const Forwarded* as_forwarded() const { return std::get_if<Forwarded>(&outcome); }
  const Dropped* as_dropped() const { return std::get_if<Dropped>(&outcome); }
};

// Outcome, emitted header, next hop and drop reason agree. Accounting and
// hit/miss bookkeeping are deliberately ignored.
inline bool observably_equal(const Verdict& a, const Verdict& b) { return a.outcome == b.outcome; }

// "FWD <next_hop> <iface> <emitted trace record>" or "DROP <reason>".
std::string describe_outcome(const Verdict& v);

}  // namespace edgert
