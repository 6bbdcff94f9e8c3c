#include "edgert/routing.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace edgert {

RoutingTable::RoutingTable(std::vector<RouteEntry> entries) : entries_(std::move(entries)) {
  for (std::uint32_t i = 0; i < entries_.size(); ++i) {
    const auto& prefix = entries_[i].prefix;
    auto [_, inserted] = by_length_[prefix.length()].emplace(prefix.network().value(), i);
    if (!inserted) throw ParseError("duplicate prefix " + prefix.to_string());
  }
  for (int len = 32; len >= 0; --len)
    if (!by_length_[len].empty()) lengths_.push_back(len);
}

RoutingTable RoutingTable::parse(std::string_view text) {
  std::vector<RouteEntry> entries;
  std::vector<Cidr> seen;
  detail::for_each_line(text, [&](std::size_t number, std::string_view line) {
    if (detail::is_ignorable(line)) return;
    auto cols = detail::split_ws(line);
    if (cols.size() != 3) throw ParseError("expected `<cidr> <next_hop> <iface>`", number);
    RouteEntry e;
    try {
      e.prefix = Cidr::parse(cols[0]);
      e.next_hop = IpAddress::parse(cols[1]);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), number);
    }
    e.iface = std::string(cols[2]);
    if (std::find(seen.begin(), seen.end(), e.prefix) != seen.end())
      throw ParseError("duplicate prefix " + e.prefix.to_string(), number);
    seen.push_back(e.prefix);
    entries.push_back(std::move(e));
  });
  return RoutingTable(std::move(entries));
}

const RouteEntry* RoutingTable::find(IpAddress dst) const {
  for (int len : lengths_) {
    std::uint32_t mask = len == 0 ? 0u : ~std::uint32_t{0} << (32 - len);
    const auto& bucket = by_length_[len];
    if (auto it = bucket.find(dst.value() & mask); it != bucket.end()) return &entries_[it->second];
  }
  return nullptr;
}

const RouteEntry* RoutingTable::lookup(IpAddress dst, LookupAccounting& acct) const {
  ++acct.route_lookups;
  return find(dst);
}

}  // namespace edgert
