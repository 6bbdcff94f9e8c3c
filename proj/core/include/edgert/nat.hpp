#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>

#include "edgert/flow_key.hpp"
#include "edgert/packet.hpp"
#include "edgert/verdict.hpp"

namespace edgert {

struct NatConfig {
  IpAddress public_addr{192, 0, 2, 1};
  std::uint16_t port_lo = 40000;
  std::uint16_t port_hi = 49999;

  // Two lines: `public <ip>` and `ports <lo>-<hi>`.
  static NatConfig parse(std::string_view text);

  std::uint32_t pool_size() const { return std::uint32_t{port_hi} - port_lo + 1; }
  bool operator==(const NatConfig&) const = default;
};

// One NAPT binding. For LAN-to-LAN flows gwy == lan and no rewrite happens.
struct NatMapping {
  Endpoint lan;
  Endpoint gwy;
  Endpoint ext;
  std::uint8_t proto = 0;
  LogicalTime expiry{0};

  OutboundKey forward_key() const { return {lan.addr, lan.port, ext.addr, ext.port, proto}; }
  InboundKey reverse_key() const { return {gwy.addr, gwy.port, ext.addr, ext.port, proto}; }

  bool operator==(const NatMapping&) const = default;
};

// Replaces the source endpoint with the gateway identity. Throws
// std::logic_error when `p` is not the mapping's outbound flow.
Packet translate_outbound(Packet p, const NatMapping& m);

// Replaces the destination endpoint with the LAN endpoint. Throws
// std::logic_error when `p` is not the mapping's inbound flow.
Packet translate_inbound(Packet p, const NatMapping& m);

// Lowest port in the pool for which `occupied(port)` is false. Uniqueness is
// per peer tuple, so callers test (public, port, ext, ext_port, proto).
template <class Occupied>
std::optional<std::uint16_t> lowest_free_port(const NatConfig& cfg, Occupied&& occupied) {
  for (std::uint32_t port = cfg.port_lo; port <= cfg.port_hi; ++port)
    if (!occupied(static_cast<std::uint16_t>(port))) return static_cast<std::uint16_t>(port);
  return std::nullopt;
}

// Standalone NAT table used by the baseline pipeline: forward and reverse
// maps kept as mutual inverses.
class NatTable {
 public:
  explicit NatTable(NatConfig cfg) : cfg_(cfg) {}

  // Forward (Outbound) lookup. Expired mappings are removed and miss.
  const NatMapping* lookup(const OutboundKey& key, LogicalTime now, LookupAccounting& acct);
  // Reverse (Inbound) lookup.
  const NatMapping* lookup(const InboundKey& key, LogicalTime now, LookupAccounting& acct);

  // Binds the LAN endpoint to the lowest free gateway port for this peer.
  // Stale occupants are reclaimed. nullopt when the pool is exhausted.
  std::optional<NatMapping> allocate(Endpoint lan, Endpoint ext, std::uint8_t proto,
                                     LogicalTime now, LogicalTime expiry);

  void refresh(const OutboundKey& key, LogicalTime expiry);
  std::size_t sweep_expired(LogicalTime now);

  std::size_t size() const { return forward_.size(); }
  const NatConfig& config() const { return cfg_; }

  // Forward and reverse maps are exact inverses and no two live mappings
  // share a reverse key.
  bool consistent() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [_, m] : forward_) fn(m);
  }

 private:
  void erase(OutboundKey key);

  NatConfig cfg_;
  std::unordered_map<OutboundKey, NatMapping> forward_;
  std::unordered_map<InboundKey, OutboundKey> reverse_;
};

}  // namespace edgert
