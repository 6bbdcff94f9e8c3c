#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "edgert/packet.hpp"
#include "edgert/verdict.hpp"

namespace edgert {

struct RouteEntry {
  Cidr prefix;
  IpAddress next_hop;
  std::string iface;

  NextHop hop() const { return {next_hop, iface}; }
  bool operator==(const RouteEntry&) const = default;
};

// Static longest-prefix-match table. Immutable once built; route changes
// are made by building a new table.
class RoutingTable {
 public:
  RoutingTable() = default;
  explicit RoutingTable(std::vector<RouteEntry> entries);

  // Lines of `<cidr> <next_hop_ip> <iface>`, '#' comments allowed.
  static RoutingTable parse(std::string_view text);

  // Most specific covering route, or nullptr when nothing covers `dst`.
  const RouteEntry* lookup(IpAddress dst, LookupAccounting& acct) const;

  const std::vector<RouteEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  const RouteEntry* find(IpAddress dst) const;

  std::vector<RouteEntry> entries_;
  // Per prefix length: masked network -> index into entries_.
  std::array<std::unordered_map<std::uint32_t, std::uint32_t>, 33> by_length_;
  // Prefix lengths present, longest first.
  std::vector<int> lengths_;
};

}  // namespace edgert
