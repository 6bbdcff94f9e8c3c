#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edgert {

// Logical arrival time. Traces carry seconds with up to microsecond precision.
using LogicalTime = std::chrono::microseconds;

inline constexpr std::uint8_t kProtoIcmp = 1;
inline constexpr std::uint8_t kProtoTcp = 6;
inline constexpr std::uint8_t kProtoUdp = 17;

inline constexpr bool has_ports(std::uint8_t proto) {
  return proto == kProtoTcp || proto == kProtoUdp;
}

// Raised for malformed trace lines and configuration files. `line` is
// 1-based when the error came from a multi-line source, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IpAddress {
 public:
  constexpr IpAddress() = default;
  constexpr explicit IpAddress(std::uint32_t host_order) : value_(host_order) {}
  constexpr IpAddress(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
      : value_(std::uint32_t{a} << 24 | std::uint32_t{b} << 16 | std::uint32_t{c} << 8 | d) {}

  static std::optional<IpAddress> try_parse(std::string_view text);
  static IpAddress parse(std::string_view text);

  constexpr std::uint32_t value() const { return value_; }
  std::string to_string() const;

  constexpr auto operator<=>(const IpAddress&) const = default;

 private:
  std::uint32_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, IpAddress addr);

// An IPv4 prefix. Host bits below the prefix length are always zero.
class Cidr {
 public:
  constexpr Cidr() = default;
  Cidr(IpAddress network, int length);

  // Accepts "a.b.c.d/n" or a bare address (treated as /32).
  static Cidr parse(std::string_view text);
  static constexpr Cidr any() { return Cidr{}; }

  constexpr IpAddress network() const { return network_; }
  constexpr int length() const { return length_; }
  constexpr std::uint32_t mask() const {
    return length_ == 0 ? 0u : ~std::uint32_t{0} << (32 - length_);
  }
  constexpr bool contains(IpAddress addr) const {
    return (addr.value() & mask()) == network_.value();
  }
  std::string to_string() const;

  constexpr auto operator<=>(const Cidr&) const = default;

 private:
  IpAddress network_{};
  int length_ = 0;
};

struct Endpoint {
  IpAddress addr;
  std::uint16_t port = 0;

  constexpr auto operator<=>(const Endpoint&) const = default;
};

// The five-tuple selector identifying a flow.
struct SessionId {
  IpAddress src_addr;
  std::uint16_t src_port = 0;
  IpAddress dst_addr;
  std::uint16_t dst_port = 0;
  std::uint8_t ip_proto = 0;

  constexpr Endpoint src() const { return {src_addr, src_port}; }
  constexpr Endpoint dst() const { return {dst_addr, dst_port}; }
  constexpr SessionId reflected() const {
    return {dst_addr, dst_port, src_addr, src_port, ip_proto};
  }

  constexpr auto operator<=>(const SessionId&) const = default;
};

struct TcpFlags {
  bool syn = false;
  bool ack = false;
  bool fin = false;
  bool rst = false;

  constexpr bool none() const { return !(syn || ack || fin || rst); }
  // Bit order S=8, A=4, F=2, R=1.
  constexpr std::uint8_t bits() const {
    return static_cast<std::uint8_t>(syn << 3 | ack << 2 | fin << 1 | rst);
  }
  static constexpr TcpFlags from_bits(std::uint8_t b) {
    return {(b & 8) != 0, (b & 4) != 0, (b & 2) != 0, (b & 1) != 0};
  }

  // "-" or a subset of "SAFR" in that order.
  std::string to_string() const;
  static std::optional<TcpFlags> try_parse(std::string_view text);

  constexpr bool operator==(const TcpFlags&) const = default;
};

struct Packet {
  LogicalTime ts{0};
  SessionId sid;
  std::uint8_t tos = 0;
  std::uint8_t ttl = 64;
  TcpFlags flags;
  std::uint16_t payload_len = 0;

  constexpr std::uint8_t dscp() const { return tos >> 2; }
  constexpr std::uint8_t ecn() const { return tos & 0x3; }

  constexpr bool operator==(const Packet&) const = default;
};

enum class Direction : std::uint8_t { Outbound, Inbound };

std::string_view to_string(Direction dir);

inline Direction classify_direction(const Packet& p, const Cidr& lan_prefix) {
  return lan_prefix.contains(p.sid.src_addr) ? Direction::Outbound : Direction::Inbound;
}

// Writes the 6-bit code point into the upper bits of ToS, keeping ECN.
// Throws std::domain_error when dscp > 63.
Packet set_dscp(Packet p, unsigned dscp);

// Trace records: `ts proto src_ip:src_port dst_ip:dst_port flags payload_len [tos [ttl]]`
Packet parse_trace_record(std::string_view line);
std::string render_trace_record(const Packet& p);

// Seconds with at most six fractional digits.
LogicalTime parse_timestamp(std::string_view text);
std::string render_timestamp(LogicalTime ts);

// Parses a whole trace, skipping blank and '#' lines. Timestamps must be
// non-decreasing. Errors carry the 1-based line number.
std::vector<Packet> parse_trace(std::istream& in);
std::vector<Packet> parse_trace(std::string_view text);
void render_trace(std::ostream& out, const std::vector<Packet>& packets);

}  // namespace edgert

template <>
struct std::hash<edgert::IpAddress> {
  std::size_t operator()(edgert::IpAddress a) const noexcept {
    return std::hash<std::uint32_t>{}(a.value());
  }
};
