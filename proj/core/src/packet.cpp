#include "edgert/packet.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "text_util.hpp"

namespace edgert {

using detail::parse_uint;

std::optional<IpAddress> IpAddress::try_parse(std::string_view text) {
  std::uint32_t value = 0;
  for (int octet = 0; octet < 4; ++octet) {
    auto dot = text.find('.');
    if ((octet < 3) != (dot != std::string_view::npos)) return std::nullopt;
    auto part = text.substr(0, dot);
    if (part.size() > 3) return std::nullopt;
    auto v = parse_uint<std::uint32_t>(part, 255);
    if (!v) return std::nullopt;
    value = value << 8 | *v;
    if (dot != std::string_view::npos) text.remove_prefix(dot + 1);
  }
  return IpAddress{value};
}

IpAddress IpAddress::parse(std::string_view text) {
  if (auto a = try_parse(text)) return *a;
  throw ParseError("malformed IPv4 address '" + std::string(text) + "'");
}

std::string IpAddress::to_string() const {
  return std::to_string(value_ >> 24) + '.' + std::to_string(value_ >> 16 & 0xff) + '.' +
         std::to_string(value_ >> 8 & 0xff) + '.' + std::to_string(value_ & 0xff);
}

std::ostream& operator<<(std::ostream& os, IpAddress addr) { return os << addr.to_string(); }

Cidr::Cidr(IpAddress network, int length) : length_(length) {
  if (length < 0 || length > 32) throw ParseError("prefix length out of range");
  network_ = IpAddress{network.value() & mask()};
}

Cidr Cidr::parse(std::string_view text) {
  auto slash = text.find('/');
  auto addr = IpAddress::try_parse(text.substr(0, slash));
  if (!addr) throw ParseError("malformed CIDR '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Cidr{*addr, 32};
  auto len = parse_uint<int>(text.substr(slash + 1), 32);
  if (!len) throw ParseError("malformed CIDR '" + std::string(text) + "'");
  return Cidr{*addr, *len};
}

std::string Cidr::to_string() const {
  return network_.to_string() + '/' + std::to_string(length_);
}

std::string_view to_string(Direction dir) {
  return dir == Direction::Outbound ? "outbound" : "inbound";
}

std::string TcpFlags::to_string() const {
  if (none()) return "-";
  std::string s;
  if (syn) s += 'S';
  if (ack) s += 'A';
  if (fin) s += 'F';
  if (rst) s += 'R';
  return s;
}

std::optional<TcpFlags> TcpFlags::try_parse(std::string_view text) {
  if (text == "-") return TcpFlags{};
  if (text.empty()) return std::nullopt;
  TcpFlags f;
  for (char c : text) {
    bool* bit = nullptr;
    switch (c) {
      case 'S': bit = &f.syn; break;
      case 'A': bit = &f.ack; break;
      case 'F': bit = &f.fin; break;
      case 'R': bit = &f.rst; break;
      default: return std::nullopt;
    }
    if (*bit) return std::nullopt;
    *bit = true;
  }
  return f;
}

Packet set_dscp(Packet p, unsigned dscp) {
  if (dscp > 63) throw std::domain_error("DSCP " + std::to_string(dscp) + " exceeds 63");
  p.tos = static_cast<std::uint8_t>(dscp << 2 | p.ecn());
  return p;
}

LogicalTime parse_timestamp(std::string_view text) {
  auto dot = text.find('.');
  auto whole = parse_uint<std::int64_t>(text.substr(0, dot), 9'000'000'000'000ull);
  if (!whole) throw ParseError("bad timestamp '" + std::string(text) + "'");
  std::int64_t micros = 0;
  if (dot != std::string_view::npos) {
    auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 6)
      throw ParseError("bad timestamp '" + std::string(text) + "' (at most 6 fractional digits)");
    auto f = parse_uint<std::int64_t>(frac, 999'999);
    if (!f) throw ParseError("bad timestamp '" + std::string(text) + "'");
    micros = *f;
    for (auto n = frac.size(); n < 6; ++n) micros *= 10;
  }
  return LogicalTime{*whole * 1'000'000 + micros};
}

std::string render_timestamp(LogicalTime ts) {
  auto us = ts.count();
  std::string s = std::to_string(us / 1'000'000);
  if (auto frac = us % 1'000'000; frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 6 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    s += '.';
    s += digits;
  }
  return s;
}

namespace {

[[noreturn]] void column_error(int column, std::string_view name, const std::string& why) {
  throw ParseError("column " + std::to_string(column) + " (" + std::string(name) + "): " + why);
}

Endpoint parse_endpoint(std::string_view text, int column, std::string_view name) {
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos)
    column_error(column, name, "expected ip:port, got '" + std::string(text) + "'");
  auto addr = IpAddress::try_parse(text.substr(0, colon));
  if (!addr) column_error(column, name, "malformed address '" + std::string(text) + "'");
  auto port = parse_uint<std::uint16_t>(text.substr(colon + 1), 65535);
  if (!port) column_error(column, name, "port out of range in '" + std::string(text) + "'");
  return {*addr, *port};
}

std::string render_proto(std::uint8_t proto) {
  if (proto == kProtoTcp) return "tcp";
  if (proto == kProtoUdp) return "udp";
  if (proto == kProtoIcmp) return "icmp";
  return std::to_string(proto);
}

}  // namespace

Packet parse_trace_record(std::string_view line) {
  auto cols = detail::split_ws(line);
  if (cols.size() < 6 || cols.size() > 8)
    throw ParseError("expected 6 to 8 columns, got " + std::to_string(cols.size()));

  Packet p;
  try {
    p.ts = parse_timestamp(cols[0]);
  } catch (const ParseError& e) {
    column_error(1, "ts", e.what());
  }

  if (cols[1] == "tcp") {
    p.sid.ip_proto = kProtoTcp;
  } else if (cols[1] == "udp") {
    p.sid.ip_proto = kProtoUdp;
  } else if (cols[1] == "icmp") {
    p.sid.ip_proto = kProtoIcmp;
  } else if (auto n = parse_uint<std::uint8_t>(cols[1], 255)) {
    p.sid.ip_proto = *n;
  } else {
    column_error(2, "proto", "unknown protocol '" + std::string(cols[1]) + "'");
  }

  auto src = parse_endpoint(cols[2], 3, "src");
  auto dst = parse_endpoint(cols[3], 4, "dst");
  if (!has_ports(p.sid.ip_proto) && (src.port != 0 || dst.port != 0))
    column_error(src.port != 0 ? 3 : 4, src.port != 0 ? "src" : "dst",
                 "ports must be 0 for protocol " + std::to_string(p.sid.ip_proto));
  p.sid.src_addr = src.addr;
  p.sid.src_port = src.port;
  p.sid.dst_addr = dst.addr;
  p.sid.dst_port = dst.port;

  auto flags = TcpFlags::try_parse(cols[4]);
  if (!flags) column_error(5, "flags", "expected '-' or a subset of SAFR, got '" + std::string(cols[4]) + "'");
  if (p.sid.ip_proto != kProtoTcp && !flags->none()) column_error(5, "flags", "flags set on non-TCP packet");
  p.flags = *flags;

  auto len = parse_uint<std::uint16_t>(cols[5], 65535);
  if (!len) column_error(6, "payload_len", "bad length '" + std::string(cols[5]) + "'");
  p.payload_len = *len;

  if (cols.size() > 6) {
    auto tos = parse_uint<std::uint8_t>(cols[6], 255);
    if (!tos) column_error(7, "tos", "bad ToS '" + std::string(cols[6]) + "'");
    p.tos = *tos;
  }
  if (cols.size() > 7) {
    auto ttl = parse_uint<std::uint8_t>(cols[7], 255);
    if (!ttl) column_error(8, "ttl", "bad TTL '" + std::string(cols[7]) + "'");
    if (*ttl == 0) column_error(8, "ttl", "ttl must be at least 1");
    p.ttl = *ttl;
  }
  return p;
}

std::string render_trace_record(const Packet& p) {
  std::string s = render_timestamp(p.ts);
  s += ' ';
  s += render_proto(p.sid.ip_proto);
  s += ' ';
  s += p.sid.src_addr.to_string() + ':' + std::to_string(p.sid.src_port);
  s += ' ';
  s += p.sid.dst_addr.to_string() + ':' + std::to_string(p.sid.dst_port);
  s += ' ';
  s += p.flags.to_string();
  s += ' ';
  s += std::to_string(p.payload_len);
  s += ' ';
  s += std::to_string(p.tos);
  s += ' ';
  s += std::to_string(p.ttl);
  return s;
}

std::vector<Packet> parse_trace(std::string_view text) {
  std::vector<Packet> packets;
  detail::for_each_line(text, [&](std::size_t number, std::string_view line) {
    if (detail::is_ignorable(line)) return;
    try {
      packets.push_back(parse_trace_record(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
    if (packets.size() > 1 && packets.back().ts < packets[packets.size() - 2].ts)
      throw ParseError("timestamp decreases", number);
  });
  return packets;
}

std::vector<Packet> parse_trace(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

void render_trace(std::ostream& out, const std::vector<Packet>& packets) {
  for (const auto& p : packets) out << render_trace_record(p) << '\n';
}

}  // namespace edgert
