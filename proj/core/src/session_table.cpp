#include "edgert/session_table.hpp"

#include <ostream>
#include <set>

namespace edgert {

std::optional<IntegratedEntry> advance_state(const IntegratedEntry& e, const Packet& p, Direction dir,
                                             LogicalTime now, const Timeouts& timeouts) {
  auto next = advance_tracking(e.track, e.ip_proto, p.flags, dir, now, timeouts);
  if (!next) return std::nullopt;
  IntegratedEntry out = e;
  out.track = *next;
  return out;
}

SessionTable::SessionTable(std::size_t capacity) : capacity_(capacity) {
  outbound_.reserve(std::min<std::size_t>(capacity, 1 << 16));
  inbound_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

IntegratedEntry* SessionTable::lookup_outbound(const OutboundKey& key, LogicalTime now,
                                               LookupAccounting& acct) {
  ++acct.session_lookups;
  auto it = outbound_.find(key);
  if (it == outbound_.end()) return nullptr;
  auto slot = it->second;
  if (slots_[slot]->track.expiry <= now) {
    remove_slot(slot);
    return nullptr;
  }
  return &*slots_[slot];
}

IntegratedEntry* SessionTable::lookup_inbound(const InboundKey& key, LogicalTime now,
                                              LookupAccounting& acct) {
  ++acct.session_lookups;
  auto it = inbound_.find(key);
  if (it == inbound_.end()) return nullptr;
  auto slot = it->second;
  if (slots_[slot]->track.expiry <= now) {
    remove_slot(slot);
    return nullptr;
  }
  return &*slots_[slot];
}

InsertStatus SessionTable::insert(const IntegratedEntry& e) {
  auto out_key = e.outbound_key();
  auto in_key = e.inbound_key();
  if (outbound_.contains(out_key) || inbound_.contains(in_key)) return InsertStatus::DuplicateKey;
  if (size() >= capacity_) return InsertStatus::TableFull;

  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
    slots_[slot] = e;
  } else {
    slot = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back(e);
  }
  outbound_.emplace(out_key, slot);
  inbound_.emplace(in_key, slot);
  return InsertStatus::Ok;
}

bool SessionTable::has_room(LogicalTime now) {
  if (size() >= capacity_) sweep_expired(now);
  return size() < capacity_;
}

bool SessionTable::inbound_key_live(const InboundKey& key, LogicalTime now) {
  auto it = inbound_.find(key);
  if (it == inbound_.end()) return false;
  if (slots_[it->second]->track.expiry > now) return true;
  remove_slot(it->second);
  return false;
}

std::size_t SessionTable::sweep_expired(LogicalTime now) {
  std::size_t removed = 0;
  for (std::uint32_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i] && slots_[i]->track.expiry <= now) {
      remove_slot(i);
      ++removed;
    }
  }
  return removed;
}

ReresolveReport SessionTable::reresolve_next_hops(const RoutingTable& rt) {
  ReresolveReport report;
  LookupAccounting scratch;
  for (std::uint32_t i = 0; i < slots_.size(); ++i) {
    if (!slots_[i]) continue;
    auto& e = *slots_[i];
    const RouteEntry* ext = rt.lookup(e.ext.addr, scratch);
    if (!ext) {
      remove_slot(i);
      ++report.evicted;
      continue;
    }
    const RouteEntry* lan = rt.lookup(e.lan.addr, scratch);
    std::optional<NextHop> ext_hop = ext->hop();
    std::optional<NextHop> lan_hop = lan ? std::optional<NextHop>(lan->hop()) : std::nullopt;
    if (ext_hop != e.ext_next_hop || lan_hop != e.lan_next_hop) {
      e.ext_next_hop = std::move(ext_hop);
      e.lan_next_hop = std::move(lan_hop);
      ++report.updated;
    }
  }
  return report;
}

void SessionTable::remove_slot(std::uint32_t slot) {
  outbound_.erase(slots_[slot]->outbound_key());
  inbound_.erase(slots_[slot]->inbound_key());
  slots_[slot].reset();
  free_slots_.push_back(slot);
}

bool SessionTable::consistent() const {
  if (outbound_.size() != inbound_.size()) return false;
  std::set<std::uint32_t> via_out;
  std::set<std::uint32_t> via_in;
  for (const auto& [key, slot] : outbound_) {
    if (slot >= slots_.size() || !slots_[slot] || slots_[slot]->outbound_key() != key) return false;
    via_out.insert(slot);
  }
  for (const auto& [key, slot] : inbound_) {
    if (slot >= slots_.size() || !slots_[slot] || slots_[slot]->inbound_key() != key) return false;
    via_in.insert(slot);
  }
  std::size_t occupied = 0;
  for (const auto& s : slots_) occupied += s.has_value();
  return via_out == via_in && via_out.size() == occupied && size() <= capacity_;
}

namespace {
std::string hop_text(const std::optional<NextHop>& hop) {
  return hop ? hop->addr.to_string() : std::string("-");
}
}  // namespace

void SessionTable::dump_csv(std::ostream& out) const {
  out << "lan_addr,lan_port,gwy_addr,gwy_port,ext_addr,ext_port,ip_proto,state,dscp,"
         "ext_next_hop,lan_next_hop,expiry\n";
  for_each([&](const IntegratedEntry& e) {
    out << e.lan.addr << ',' << e.lan.port << ',' << e.gwy.addr << ',' << e.gwy.port << ','
        << e.ext.addr << ',' << e.ext.port << ',' << unsigned{e.ip_proto} << ','
        << to_string(e.track.state) << ',' << unsigned{e.dscp} << ',' << hop_text(e.ext_next_hop)
        << ',' << hop_text(e.lan_next_hop) << ',' << render_timestamp(e.track.expiry) << '\n';
  });
}

}  // namespace edgert
