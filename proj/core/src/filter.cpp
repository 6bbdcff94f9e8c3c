#include "edgert/filter.hpp"

#include "text_util.hpp"

namespace edgert {

PortRange PortRange::parse(std::string_view text) {
  if (text == "any") return {};
  auto dash = text.find('-');
  auto lo = detail::parse_uint<std::uint16_t>(text.substr(0, dash), 65535);
  auto hi = dash == std::string_view::npos ? lo
                                           : detail::parse_uint<std::uint16_t>(text.substr(dash + 1), 65535);
  if (!lo || !hi || *lo > *hi) throw ParseError("malformed port range '" + std::string(text) + "'");
  return {*lo, *hi};
}

std::string PortRange::to_string() const {
  if (is_any()) return "any";
  if (lo == hi) return std::to_string(lo);
  return std::to_string(lo) + '-' + std::to_string(hi);
}

namespace {

std::optional<std::uint8_t> parse_proto(std::string_view text) {
  if (text == "any") return std::nullopt;
  if (text == "tcp") return kProtoTcp;
  if (text == "udp") return kProtoUdp;
  if (text == "icmp") return kProtoIcmp;
  if (auto n = detail::parse_uint<std::uint8_t>(text, 255)) return n;
  throw ParseError("unknown protocol '" + std::string(text) + "'");
}

Cidr parse_prefix(std::string_view text) { return text == "any" ? Cidr::any() : Cidr::parse(text); }

std::string prefix_text(const Cidr& c) { return c == Cidr::any() ? "any" : c.to_string(); }

}  // namespace

FlowMatch FlowMatch::parse(std::span<const std::string_view> cols) {
  if (cols.size() != 5) throw ParseError("expected 5 match columns, got " + std::to_string(cols.size()));
  FlowMatch m;
  m.proto = parse_proto(cols[0]);
  m.src = parse_prefix(cols[1]);
  m.src_ports = PortRange::parse(cols[2]);
  m.dst = parse_prefix(cols[3]);
  m.dst_ports = PortRange::parse(cols[4]);
  return m;
}

std::string FlowMatch::to_string() const {
  std::string p = !proto ? "any" : *proto == kProtoTcp ? "tcp" : *proto == kProtoUdp ? "udp" : std::to_string(*proto);
  return p + ' ' + prefix_text(src) + ' ' + src_ports.to_string() + ' ' + prefix_text(dst) + ' ' +
         dst_ports.to_string();
}

std::string_view to_string(Action a) { return a == Action::Accept ? "accept" : "drop"; }

RuleSet RuleSet::parse(std::string_view text) {
  std::vector<FilterRule> rules;
  detail::for_each_line(text, [&](std::size_t number, std::string_view line) {
    if (detail::is_ignorable(line)) return;
    auto cols = detail::split_ws(line);
    if (cols.size() != 6) throw ParseError("expected 6 columns, got " + std::to_string(cols.size()), number);
    FilterRule r;
    if (cols[0] == "accept") {
      r.action = Action::Accept;
    } else if (cols[0] == "drop") {
      r.action = Action::Drop;
    } else {
      throw ParseError("unknown action '" + std::string(cols[0]) + "'", number);
    }
    try {
      r.match = FlowMatch::parse(std::span(cols).subspan(1));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
    rules.push_back(r);
  });
  return RuleSet(std::move(rules));
}

RuleMatch RuleSet::evaluate(const SessionId& sid, LookupAccounting& acct) const {
  ++acct.rule_evals;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].match.matches(sid)) {
      acct.rules_scanned += i + 1;
      return {rules_[i].action, i, i + 1};
    }
  }
  acct.rules_scanned += rules_.size();
  return {default_action(), std::nullopt, rules_.size()};
}

}  // namespace edgert
