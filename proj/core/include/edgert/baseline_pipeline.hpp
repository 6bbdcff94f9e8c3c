#pragma once

#include <cstddef>
#include <unordered_map>

#include "edgert/flow_key.hpp"
#include "edgert/nat.hpp"
#include "edgert/pipeline.hpp"
#include "edgert/session_state.hpp"

namespace edgert {

// Classic session-table row: the LAN-side selector plus state and timeout.
struct CasualEntry {
  SessionId sid;
  Tracking track;

  bool operator==(const CasualEntry&) const = default;
};

// Session table keyed by the LAN-side (initiator) five-tuple, so one row
// serves both directions of a flow.
class CasualTable {
 public:
  explicit CasualTable(std::size_t capacity) : capacity_(capacity) {}

  CasualEntry* lookup(const OutboundKey& key, LogicalTime now, LookupAccounting& acct);
  [[nodiscard]] InsertStatus insert(const CasualEntry& e);
  bool has_room(LogicalTime now);
  std::size_t sweep_expired(LogicalTime now);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::unordered_map<OutboundKey, CasualEntry> entries_;
};

// Conventional per-packet flow: NAT table, then session table, then QoS
// classification and a route lookup for every packet.
class BaselinePipeline final : public Pipeline {
 public:
  explicit BaselinePipeline(PipelineConfig cfg);

  PipelineKind kind() const override { return PipelineKind::Baseline; }
  Verdict process(const Packet& p) override;

  const NatTable& nat_table() const { return nat_; }
  const CasualTable& sessions() const { return sessions_; }
  const PipelineConfig& config() const { return cfg_; }

 private:
  PipelineConfig cfg_;
  NatTable nat_;
  CasualTable sessions_;
};

}  // namespace edgert
