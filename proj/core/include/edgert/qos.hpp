#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "edgert/filter.hpp"

namespace edgert {

struct QosRule {
  FlowMatch match;
  std::uint8_t dscp = 0;

  bool operator==(const QosRule&) const = default;
};

// First-match classification of a session selector into a DSCP; 0 when no
// rule matches.
class QosPolicy {
 public:
  QosPolicy() = default;
  explicit QosPolicy(std::vector<QosRule> rules);

  // `<proto> <src> <src_ports> <dst> <dst_ports> dscp <0-63>` per line.
  static QosPolicy parse(std::string_view text);

  std::uint8_t classify(const SessionId& sid, LookupAccounting& acct) const;

  const std::vector<QosRule>& rules() const { return rules_; }

 private:
  std::vector<QosRule> rules_;
};

}  // namespace edgert
