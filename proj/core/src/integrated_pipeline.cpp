#include "edgert/integrated_pipeline.hpp"

#include <stdexcept>

namespace edgert {

IntegratedPipeline::IntegratedPipeline(PipelineConfig cfg) : IntegratedPipeline(std::move(cfg), Faults{}) {}

IntegratedPipeline::IntegratedPipeline(PipelineConfig cfg, Faults faults)
    : cfg_(std::move(cfg)), faults_(faults), table_(cfg_.capacity) {
  cfg_.validate();
}

Verdict IntegratedPipeline::process(const Packet& p) {
  const LogicalTime now = p.ts;
  LookupAccounting acct;
  const Direction dir = classify_direction(p, cfg_.lan_prefix);
  const bool lan_to_lan = dir == Direction::Outbound && cfg_.lan_prefix.contains(p.sid.dst_addr);

  IntegratedEntry* entry = nullptr;
  Direction role = dir;
  if (dir == Direction::Outbound) {
    entry = table_.lookup_outbound(outbound_key_of(p.sid), now, acct);
    if (!entry && lan_to_lan) {
      entry = table_.lookup_inbound(inbound_key_of(p.sid), now, acct);
      role = Direction::Inbound;
    }
  } else {
    entry = table_.lookup_inbound(inbound_key_of(p.sid), now, acct);
  }
  if (!entry) return miss_path(p, lan_to_lan, acct);

  constexpr auto hit = SessionOutcome::Hit;
  auto next = advance_tracking(entry->track, entry->ip_proto, p.flags, role, now, cfg_.timeouts);
  if (!next) return detail::drop(DropReason::StateViolation, acct, hit);
  entry->track = *next;

  const NatMapping mapping = entry->nat_mapping();
  Packet work = role == Direction::Outbound ? translate_outbound(p, mapping) : translate_inbound(p, mapping);
  if (!faults_.skip_hit_dscp) work = set_dscp(work, entry->dscp);

  const auto& hop = role == Direction::Outbound ? entry->ext_next_hop : entry->lan_next_hop;
  if (!hop) return detail::drop(DropReason::NoRoute, acct, hit);
  return detail::forward_or_expire(work, *hop, acct, hit);
}

Verdict IntegratedPipeline::miss_path(const Packet& p, bool lan_to_lan, LookupAccounting& acct) {
  using detail::drop;
  constexpr auto miss = SessionOutcome::Miss;
  const LogicalTime now = p.ts;
  if (classify_direction(p, cfg_.lan_prefix) == Direction::Inbound)
    return drop(DropReason::InboundNoSession, acct, miss);

  if (cfg_.rules->evaluate(p.sid, acct).action == Action::Drop) return drop(DropReason::RuleDenied, acct, miss);
  auto track = open_tracking(p.sid.ip_proto, p.flags, now, cfg_.timeouts);
  if (!track) return drop(DropReason::StateViolation, acct, miss);
  if (!table_.has_room(now)) return drop(DropReason::TableFull, acct, miss);

  IntegratedEntry e;
  e.lan = p.sid.src();
  e.ext = p.sid.dst();
  e.ip_proto = p.sid.ip_proto;
  e.track = *track;
  if (lan_to_lan) {
    e.gwy = e.lan;
  } else {
    ++acct.nat_lookups;
    auto port = lowest_free_port(cfg_.nat, [&](std::uint16_t port) {
      return table_.inbound_key_live(InboundKey{cfg_.nat.public_addr, port, e.ext.addr, e.ext.port, e.ip_proto},
                                     now);
    });
    if (!port) return drop(DropReason::NatExhausted, acct, miss);
    e.gwy = {cfg_.nat.public_addr, *port};
  }

  e.dscp = cfg_.qos->classify(p.sid, acct);
  if (const auto* r = cfg_.routes->lookup(e.ext.addr, acct)) e.ext_next_hop = r->hop();
  if (const auto* r = cfg_.routes->lookup(e.lan.addr, acct)) e.lan_next_hop = r->hop();
  if (table_.insert(e) != InsertStatus::Ok)
    throw std::logic_error("integrated: session insert failed after room check");

  Packet work = set_dscp(translate_outbound(p, e.nat_mapping()), e.dscp);
  if (!e.ext_next_hop) return drop(DropReason::NoRoute, acct, miss);
  return detail::forward_or_expire(work, *e.ext_next_hop, acct, miss);
}

ReresolveReport IntegratedPipeline::replace_routes(std::shared_ptr<const RoutingTable> routes) {
  cfg_.routes = std::move(routes);
  return table_.reresolve_next_hops(*cfg_.routes);
}

}  // namespace edgert
