#include "edgert/session_state.hpp"

namespace edgert {

std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::SynSent: return "SYN_SENT";
    case SessionState::SynReceived: return "SYN_RECEIVED";
    case SessionState::Established: return "ESTABLISHED";
    case SessionState::FinWait: return "FIN_WAIT";
    case SessionState::Closed: return "CLOSED";
    case SessionState::Open: return "OPEN";
  }
  return "?";
}

LogicalTime Timeouts::for_state(std::uint8_t proto, SessionState state) const {
  if (proto != kProtoTcp) return other;
  return state == SessionState::Established ? tcp_established : tcp_transitory;
}

bool Timeouts::valid() const {
  return tcp_established.count() > 0 && tcp_transitory.count() > 0 && other.count() > 0 &&
         rst_grace.count() > 0;
}

std::optional<Tracking> open_tracking(std::uint8_t proto, TcpFlags flags, LogicalTime now,
                                      const Timeouts& timeouts) {
  if (proto != kProtoTcp) return Tracking{SessionState::Open, now + timeouts.other, std::nullopt};
  if (flags != TcpFlags{.syn = true}) return std::nullopt;
  return Tracking{SessionState::SynSent, now + timeouts.tcp_transitory, std::nullopt};
}

namespace {

std::optional<SessionState> next_tcp_state(const Tracking& cur, TcpFlags f, Direction dir) {
  using S = SessionState;
  if (f.rst) return S::Closed;

  const bool bare_ack = f == TcpFlags{.ack = true};
  const bool fin_only = f.fin && !f.syn;  // FIN, optionally with ACK

  switch (cur.state) {
    case S::SynSent:
      if (dir == Direction::Outbound && f == TcpFlags{.syn = true}) return S::SynSent;
      if (dir == Direction::Inbound && f == TcpFlags{.syn = true, .ack = true}) return S::SynReceived;
      return std::nullopt;
    case S::SynReceived:
      if (dir == Direction::Outbound && bare_ack) return S::Established;
      if (dir == Direction::Inbound && f == TcpFlags{.syn = true, .ack = true}) return S::SynReceived;
      if (fin_only) return S::FinWait;
      return std::nullopt;
    case S::Established:
      if (bare_ack) return S::Established;
      if (fin_only) return S::FinWait;
      return std::nullopt;
    case S::FinWait:
      if (bare_ack) return S::FinWait;
      if (fin_only) return dir == cur.fin_origin ? S::FinWait : S::Closed;
      return std::nullopt;
    case S::Closed:
      if (bare_ack) return S::Closed;
      return std::nullopt;
    case S::Open:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Tracking> advance_tracking(const Tracking& current, std::uint8_t proto, TcpFlags flags,
                                         Direction dir, LogicalTime now, const Timeouts& timeouts) {
  if (proto != kProtoTcp) {
    if (current.state != SessionState::Open) return std::nullopt;
    return Tracking{SessionState::Open, now + timeouts.other, std::nullopt};
  }
  auto next = next_tcp_state(current, flags, dir);
  if (!next) return std::nullopt;

  Tracking t{*next, now + timeouts.for_state(proto, *next), current.fin_origin};
  if (*next == SessionState::FinWait && current.state != SessionState::FinWait) t.fin_origin = dir;
  if (flags.rst) t.expiry = now + timeouts.rst_grace;
  return t;
}

}  // namespace edgert
