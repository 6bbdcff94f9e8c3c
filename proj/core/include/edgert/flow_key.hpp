#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "edgert/packet.hpp"

namespace edgert {

// Fixed-width exact-match key: (local endpoint, remote endpoint, protocol).
// The tag keeps LAN-side and gateway-side keys from being mixed up.
template <class Tag>
struct FlowKey {
  IpAddress local_addr;
  std::uint16_t local_port = 0;
  IpAddress remote_addr;
  std::uint16_t remote_port = 0;
  std::uint8_t proto = 0;

  constexpr auto operator<=>(const FlowKey&) const = default;
};

struct OutboundTag;
struct InboundTag;

// (lan_addr, lan_port, ext_addr, ext_port, proto)
using OutboundKey = FlowKey<OutboundTag>;
// (gwy_addr, gwy_port, ext_addr, ext_port, proto)
using InboundKey = FlowKey<InboundTag>;

// Key of a packet travelling from the LAN side towards its peer.
constexpr OutboundKey outbound_key_of(const SessionId& sid) {
  return {sid.src_addr, sid.src_port, sid.dst_addr, sid.dst_port, sid.ip_proto};
}

// Key of a packet arriving from the peer at the gateway identity.
constexpr InboundKey inbound_key_of(const SessionId& sid) {
  return {sid.dst_addr, sid.dst_port, sid.src_addr, sid.src_port, sid.ip_proto};
}

constexpr SessionId session_id_of(const OutboundKey& k) {
  return {k.local_addr, k.local_port, k.remote_addr, k.remote_port, k.proto};
}

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}
}  // namespace detail

}  // namespace edgert

template <class Tag>
struct std::hash<edgert::FlowKey<Tag>> {
  std::size_t operator()(const edgert::FlowKey<Tag>& k) const noexcept {
    std::uint64_t a = std::uint64_t{k.local_addr.value()} << 32 | k.remote_addr.value();
    std::uint64_t b = std::uint64_t{k.local_port} << 24 | std::uint64_t{k.remote_port} << 8 | k.proto;
    return edgert::detail::mix64(a ^ edgert::detail::mix64(b));
  }
};
