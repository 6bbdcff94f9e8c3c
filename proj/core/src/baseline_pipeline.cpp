#include "edgert/baseline_pipeline.hpp"

namespace edgert {

CasualEntry* CasualTable::lookup(const OutboundKey& key, LogicalTime now, LookupAccounting& acct) {
  ++acct.session_lookups;
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  if (it->second.track.expiry <= now) {
    entries_.erase(it);
    return nullptr;
  }
  return &it->second;
}

InsertStatus CasualTable::insert(const CasualEntry& e) {
  auto key = outbound_key_of(e.sid);
  if (entries_.contains(key)) return InsertStatus::DuplicateKey;
  if (entries_.size() >= capacity_) return InsertStatus::TableFull;
  entries_.emplace(key, e);
  return InsertStatus::Ok;
}

bool CasualTable::has_room(LogicalTime now) {
  if (entries_.size() >= capacity_) sweep_expired(now);
  return entries_.size() < capacity_;
}

std::size_t CasualTable::sweep_expired(LogicalTime now) {
  return std::erase_if(entries_, [now](const auto& kv) { return kv.second.track.expiry <= now; });
}

BaselinePipeline::BaselinePipeline(PipelineConfig cfg)
    : cfg_(std::move(cfg)), nat_(cfg_.nat), sessions_(cfg_.capacity) {
  cfg_.validate();
}

Verdict BaselinePipeline::process(const Packet& p) {
  using detail::drop;
  const LogicalTime now = p.ts;
  LookupAccounting acct;
  const Direction dir = classify_direction(p, cfg_.lan_prefix);
  const bool lan_to_lan = dir == Direction::Outbound && cfg_.lan_prefix.contains(p.sid.dst_addr);
  Packet work = p;

  // NAT table first.
  const NatMapping* mapping = nullptr;
  OutboundKey session_key;
  if (dir == Direction::Outbound) {
    session_key = outbound_key_of(p.sid);
    mapping = nat_.lookup(session_key, now, acct);
    if (mapping) work = translate_outbound(work, *mapping);
  } else {
    mapping = nat_.lookup(inbound_key_of(p.sid), now, acct);
    if (!mapping) return drop(DropReason::InboundNoSession, acct, SessionOutcome::NotConsulted);
    work = translate_inbound(work, *mapping);
    session_key = mapping->forward_key();
  }

  // Then the session table, keyed on the LAN-side tuple.
  Direction role = dir;
  CasualEntry* entry = sessions_.lookup(session_key, now, acct);
  if (!entry && lan_to_lan) {
    session_key = outbound_key_of(p.sid.reflected());
    entry = sessions_.lookup(session_key, now, acct);
    if (entry) role = Direction::Inbound;
  }
  const SessionOutcome outcome = entry ? SessionOutcome::Hit : SessionOutcome::Miss;

  SessionId lan_sid;
  if (entry) {
    auto next = advance_tracking(entry->track, p.sid.ip_proto, p.flags, role, now, cfg_.timeouts);
    if (!next) return drop(DropReason::StateViolation, acct, outcome);
    entry->track = *next;
    if (mapping) nat_.refresh(mapping->forward_key(), next->expiry);
    lan_sid = entry->sid;
  } else {
    if (dir == Direction::Inbound) return drop(DropReason::InboundNoSession, acct, outcome);
    if (cfg_.rules->evaluate(p.sid, acct).action == Action::Drop)
      return drop(DropReason::RuleDenied, acct, outcome);
    auto track = open_tracking(p.sid.ip_proto, p.flags, now, cfg_.timeouts);
    if (!track) return drop(DropReason::StateViolation, acct, outcome);
    if (!sessions_.has_room(now)) return drop(DropReason::TableFull, acct, outcome);
    if (!lan_to_lan) {
      auto fresh = nat_.allocate(p.sid.src(), p.sid.dst(), p.sid.ip_proto, now, track->expiry);
      if (!fresh) return drop(DropReason::NatExhausted, acct, outcome);
      work = translate_outbound(work, *fresh);
    }
    if (sessions_.insert(CasualEntry{p.sid, *track}) != InsertStatus::Ok)
      throw std::logic_error("baseline: session insert failed after room check");
    lan_sid = p.sid;
  }

  // QoS classification and marking, every packet.
  work = set_dscp(work, cfg_.qos->classify(lan_sid, acct));

  // Routing, every packet, on the post-NAT destination.
  const RouteEntry* route = cfg_.routes->lookup(work.sid.dst_addr, acct);
  if (!route) return drop(DropReason::NoRoute, acct, outcome);

  return detail::forward_or_expire(work, route->hop(), acct, outcome);
}

}  // namespace edgert
