#pragma once

#include <cstddef>
#include <memory>
#include <string_view>

#include "edgert/filter.hpp"
#include "edgert/nat.hpp"
#include "edgert/packet.hpp"
#include "edgert/qos.hpp"
#include "edgert/routing.hpp"
#include "edgert/session_state.hpp"
#include "edgert/session_table.hpp"
#include "edgert/verdict.hpp"

namespace edgert {

// Everything a pipeline instance needs. Rule sets, routes and the QoS
// policy are immutable and may be shared between instances.
struct PipelineConfig {
  std::shared_ptr<const RuleSet> rules = std::make_shared<const RuleSet>();
  std::shared_ptr<const RoutingTable> routes = std::make_shared<const RoutingTable>();
  std::shared_ptr<const QosPolicy> qos = std::make_shared<const QosPolicy>();
  NatConfig nat;
  Cidr lan_prefix = Cidr::parse("10.0.0.0/8");
  Timeouts timeouts;
  std::size_t capacity = SessionTable::kDefaultCapacity;

  // Throws ParseError when the configuration cannot work, e.g. the public
  // NAT address lies inside the LAN prefix.
  void validate() const;
};

enum class PipelineKind : std::uint8_t { Baseline, Integrated };

std::string_view to_string(PipelineKind k);

// A per-packet processing pipeline owning its own mutable state.
class Pipeline {
 public:
  virtual ~Pipeline() = default;

  virtual PipelineKind kind() const = 0;
  virtual Verdict process(const Packet& p) = 0;

 protected:
  Pipeline() = default;
  Pipeline(const Pipeline&) = default;
  Pipeline& operator=(const Pipeline&) = default;
};

std::unique_ptr<Pipeline> make_pipeline(PipelineKind kind, const PipelineConfig& cfg);

namespace detail {

inline Verdict drop(DropReason reason, const LookupAccounting& acct, SessionOutcome session) {
  return Verdict{Dropped{reason}, acct, session};
}

// Common tail of both pipelines: ttl decrement on forward, drop at zero.
inline Verdict forward_or_expire(Packet work, NextHop hop, const LookupAccounting& acct,
                                 SessionOutcome session) {
  if (work.ttl <= 1) return drop(DropReason::TtlExpired, acct, session);
  --work.ttl;
  return Verdict{Forwarded{std::move(hop), work}, acct, session};
}

}  // namespace detail

}  // namespace edgert
