#include "edgert/qos.hpp"

#include "text_util.hpp"

namespace edgert {

QosPolicy::QosPolicy(std::vector<QosRule> rules) : rules_(std::move(rules)) {
  for (const auto& r : rules_)
    if (r.dscp > 63) throw ParseError("DSCP " + std::to_string(r.dscp) + " exceeds 63");
}

QosPolicy QosPolicy::parse(std::string_view text) {
  std::vector<QosRule> rules;
  detail::for_each_line(text, [&](std::size_t number, std::string_view line) {
    if (detail::is_ignorable(line)) return;
    auto cols = detail::split_ws(line);
    if (cols.size() != 7 || cols[5] != "dscp")
      throw ParseError("expected `<proto> <src> <src_ports> <dst> <dst_ports> dscp <0-63>`", number);
    QosRule r;
    try {
      r.match = FlowMatch::parse(std::span(cols).first(5));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
    auto dscp = detail::parse_uint<std::uint8_t>(cols[6], 63);
    if (!dscp) throw ParseError("DSCP must be 0-63, got '" + std::string(cols[6]) + "'", number);
    r.dscp = *dscp;
    rules.push_back(r);
  });
  return QosPolicy(std::move(rules));
}

std::uint8_t QosPolicy::classify(const SessionId& sid, LookupAccounting& acct) const {
  ++acct.qos_classifications;
  for (const auto& r : rules_)
    if (r.match.matches(sid)) return r.dscp;
  return 0;
}

}  // namespace edgert
