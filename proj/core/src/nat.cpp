#include "edgert/nat.hpp"

#include <stdexcept>

#include "text_util.hpp"

namespace edgert {

NatConfig NatConfig::parse(std::string_view text) {
  std::optional<IpAddress> addr;
  std::optional<std::pair<std::uint16_t, std::uint16_t>> ports;
  detail::for_each_line(text, [&](std::size_t number, std::string_view line) {
    if (detail::is_ignorable(line)) return;
    auto cols = detail::split_ws(line);
    if (cols.size() != 2) throw ParseError("expected `public <ip>` or `ports <lo>-<hi>`", number);
    if (cols[0] == "public") {
      addr = IpAddress::try_parse(cols[1]);
      if (!addr) throw ParseError("malformed public address '" + std::string(cols[1]) + "'", number);
    } else if (cols[0] == "ports") {
      auto dash = cols[1].find('-');
      auto lo = detail::parse_uint<std::uint16_t>(cols[1].substr(0, dash), 65535);
      auto hi = dash == std::string_view::npos
                    ? std::nullopt
                    : detail::parse_uint<std::uint16_t>(cols[1].substr(dash + 1), 65535);
      if (!lo || !hi || *lo > *hi || *lo == 0)
        throw ParseError("malformed port range '" + std::string(cols[1]) + "'", number);
      ports = {*lo, *hi};
    } else {
      throw ParseError("unknown directive '" + std::string(cols[0]) + "'", number);
    }
  });
  if (!addr) throw ParseError("NAT config lacks a `public` line");
  if (!ports) throw ParseError("NAT config lacks a `ports` line");
  return {*addr, ports->first, ports->second};
}

Packet translate_outbound(Packet p, const NatMapping& m) {
  if (p.sid.src() != m.lan || p.sid.dst() != m.ext || p.sid.ip_proto != m.proto)
    throw std::logic_error("translate_outbound: packet does not belong to mapping");
  p.sid.src_addr = m.gwy.addr;
  p.sid.src_port = m.gwy.port;
  return p;
}

Packet translate_inbound(Packet p, const NatMapping& m) {
  if (p.sid.dst() != m.gwy || p.sid.src() != m.ext || p.sid.ip_proto != m.proto)
    throw std::logic_error("translate_inbound: packet does not belong to mapping");
  p.sid.dst_addr = m.lan.addr;
  p.sid.dst_port = m.lan.port;
  return p;
}

const NatMapping* NatTable::lookup(const OutboundKey& key, LogicalTime now, LookupAccounting& acct) {
  ++acct.nat_lookups;
  auto it = forward_.find(key);
  if (it == forward_.end()) return nullptr;
  if (it->second.expiry <= now) {
    erase(key);
    return nullptr;
  }
  return &it->second;
}

const NatMapping* NatTable::lookup(const InboundKey& key, LogicalTime now, LookupAccounting& acct) {
  ++acct.nat_lookups;
  auto it = reverse_.find(key);
  if (it == reverse_.end()) return nullptr;
  auto fwd = forward_.find(it->second);
  if (fwd->second.expiry <= now) {
    erase(it->second);
    return nullptr;
  }
  return &fwd->second;
}

std::optional<NatMapping> NatTable::allocate(Endpoint lan, Endpoint ext, std::uint8_t proto,
                                             LogicalTime now, LogicalTime expiry) {
  OutboundKey fwd{lan.addr, lan.port, ext.addr, ext.port, proto};
  if (auto it = forward_.find(fwd); it != forward_.end()) {
    if (it->second.expiry > now) throw std::logic_error("NatTable::allocate: flow already mapped");
    erase(fwd);
  }
  auto port = lowest_free_port(cfg_, [&](std::uint16_t p) {
    auto it = reverse_.find(InboundKey{cfg_.public_addr, p, ext.addr, ext.port, proto});
    if (it == reverse_.end()) return false;
    if (forward_.at(it->second).expiry > now) return true;
    erase(it->second);
    return false;
  });
  if (!port) return std::nullopt;
  NatMapping m{lan, {cfg_.public_addr, *port}, ext, proto, expiry};
  forward_.emplace(fwd, m);
  reverse_.emplace(m.reverse_key(), fwd);
  return m;
}

void NatTable::refresh(const OutboundKey& key, LogicalTime expiry) {
  if (auto it = forward_.find(key); it != forward_.end()) it->second.expiry = expiry;
}

std::size_t NatTable::sweep_expired(LogicalTime now) {
  std::size_t removed = 0;
  for (auto it = forward_.begin(); it != forward_.end();) {
    if (it->second.expiry <= now) {
      reverse_.erase(it->second.reverse_key());
      it = forward_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

void NatTable::erase(OutboundKey key) {
  auto it = forward_.find(key);
  if (it == forward_.end()) return;
  reverse_.erase(it->second.reverse_key());
  forward_.erase(it);
}

bool NatTable::consistent() const {
  if (forward_.size() != reverse_.size()) return false;
  for (const auto& [key, m] : forward_) {
    if (m.forward_key() != key) return false;
    auto it = reverse_.find(m.reverse_key());
    if (it == reverse_.end() || it->second != key) return false;
  }
  return true;
}

}  // namespace edgert
