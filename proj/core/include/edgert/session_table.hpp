#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "edgert/flow_key.hpp"
#include "edgert/nat.hpp"
#include "edgert/routing.hpp"
#include "edgert/session_state.hpp"
#include "edgert/verdict.hpp"

namespace edgert {

// One row of the integrated table: NAT binding, filter state and timeout,
// DSCP, and the cached next hops towards both sides.
struct IntegratedEntry {
  Endpoint lan;
  Endpoint gwy;
  Endpoint ext;
  std::uint8_t ip_proto = 0;
  Tracking track;
  std::uint8_t dscp = 0;
  // Empty when no route covered the address at resolution time.
  std::optional<NextHop> ext_next_hop;
  std::optional<NextHop> lan_next_hop;

  OutboundKey outbound_key() const { return {lan.addr, lan.port, ext.addr, ext.port, ip_proto}; }
  InboundKey inbound_key() const { return {gwy.addr, gwy.port, ext.addr, ext.port, ip_proto}; }
  NatMapping nat_mapping() const { return {lan, gwy, ext, ip_proto, track.expiry}; }
  SessionId lan_side_sid() const { return session_id_of(outbound_key()); }

  bool operator==(const IntegratedEntry&) const = default;
};

// The accepted-packet result for an integrated entry; nullopt on violation.
std::optional<IntegratedEntry> advance_state(const IntegratedEntry& e, const Packet& p, Direction dir,
                                             LogicalTime now, const Timeouts& timeouts);

enum class InsertStatus : std::uint8_t { Ok, DuplicateKey, TableFull };

struct ReresolveReport {
  std::size_t updated = 0;
  std::size_t evicted = 0;
};

// Dual-indexed session table. Both indexes point at the same slot; the
// pointers returned by lookups stay valid until the entry is removed. Key
// fields of a returned entry must not be modified.
class SessionTable {
 public:
  static constexpr std::size_t kDefaultCapacity = 65536;

  explicit SessionTable(std::size_t capacity = kDefaultCapacity);

  IntegratedEntry* lookup_outbound(const OutboundKey& key, LogicalTime now, LookupAccounting& acct);
  IntegratedEntry* lookup_inbound(const InboundKey& key, LogicalTime now, LookupAccounting& acct);

  [[nodiscard]] InsertStatus insert(const IntegratedEntry& e);

  // True when an insert would fit. At capacity, expired entries are swept
  // first so that fullness depends only on live entries.
  bool has_room(LogicalTime now);

  // True when a live entry owns `key`. A stale owner is removed and the key
  // reported free. Not a lookup: the accounting is untouched.
  bool inbound_key_live(const InboundKey& key, LogicalTime now);

  std::size_t sweep_expired(LogicalTime now);
  ReresolveReport reresolve_next_hops(const RoutingTable& rt);

  std::size_t size() const { return outbound_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return size() == 0; }

  // Both indexes reach the same entry set and every entry is reachable
  // through its own keys.
  bool consistent() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& slot : slots_)
      if (slot) fn(*slot);
  }

  // CSV with a header row: the integrated-table columns plus expiry.
  void dump_csv(std::ostream& out) const;

 private:
  void remove_slot(std::uint32_t slot);

  std::size_t capacity_;
  std::vector<std::optional<IntegratedEntry>> slots_;
  std::vector<std::uint32_t> free_slots_;
  std::unordered_map<OutboundKey, std::uint32_t> outbound_;
  std::unordered_map<InboundKey, std::uint32_t> inbound_;
};

}  // namespace edgert
