#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

#include "edgert/packet.hpp"

namespace edgert {

enum class SessionState : std::uint8_t { SynSent, SynReceived, Established, FinWait, Closed, Open };

std::string_view to_string(SessionState s);

struct Timeouts {
  LogicalTime tcp_established = std::chrono::seconds(300);
  // SynSent, SynReceived, FinWait, Closed.
  LogicalTime tcp_transitory = std::chrono::seconds(30);
  LogicalTime other = std::chrono::seconds(60);
  // Closed-by-RST entries linger this long for late packets.
  LogicalTime rst_grace = std::chrono::seconds(5);

  LogicalTime for_state(std::uint8_t proto, SessionState state) const;
  bool valid() const;
};

// Filter state carried by both the casual and the integrated entries.
// `fin_origin` records which side sent the first FIN while in FinWait.
struct Tracking {
  SessionState state = SessionState::Open;
  LogicalTime expiry{0};
  std::optional<Direction> fin_origin;

  bool operator==(const Tracking&) const = default;
};

// State for a session created by its first packet: a bare SYN opens a TCP
// session in SynSent, any packet opens a non-TCP session. Anything else
// cannot start a session and yields nullopt.
std::optional<Tracking> open_tracking(std::uint8_t proto, TcpFlags flags, LogicalTime now,
                                      const Timeouts& timeouts);

// Next tracking state for a packet travelling in `dir` relative to the
// session initiator (Outbound = from the initiator). nullopt is a state
// violation; the caller leaves the entry untouched in that case.
std::optional<Tracking> advance_tracking(const Tracking& current, std::uint8_t proto, TcpFlags flags,
                                         Direction dir, LogicalTime now, const Timeouts& timeouts);

}  // namespace edgert
