#include "edgert/verdict.hpp"

namespace edgert {

std::string to_string(const LookupAccounting& a) {
  return "nat=" + std::to_string(a.nat_lookups) + " session=" + std::to_string(a.session_lookups) +
         " rule_evals=" + std::to_string(a.rule_evals) + " rules_scanned=" + std::to_string(a.rules_scanned) +
         " qos=" + std::to_string(a.qos_classifications) + " route=" + std::to_string(a.route_lookups);
}

std::string_view to_string(DropReason r) {
  switch (r) {
    case DropReason::RuleDenied: return "RuleDenied";
    case DropReason::StateViolation: return "StateViolation";
    case DropReason::NoRoute: return "NoRoute";
    case DropReason::NatExhausted: return "NatExhausted";
    case DropReason::TableFull: return "TableFull";
    case DropReason::TtlExpired: return "TtlExpired";
    case DropReason::InboundNoSession: return "InboundNoSession";
  }
  return "?";
}

std::string describe_outcome(const Verdict& v) {
  if (const auto* f = v.as_forwarded())
    return "FWD " + f->hop.addr.to_string() + ' ' + f->hop.iface + ' ' + render_trace_record(f->emitted);
  return "DROP " + std::string(to_string(v.as_dropped()->reason));
}

}  // namespace edgert
