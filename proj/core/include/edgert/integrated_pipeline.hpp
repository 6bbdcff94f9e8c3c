#pragma once

#include <memory>

#include "edgert/pipeline.hpp"
#include "edgert/session_table.hpp"

namespace edgert {

// Single-lookup flow: a hit yields the NAT binding, state, DSCP and next
// hop from one entry. A miss runs rules, NAT allocation, classification and
// both route lookups once, then caches the results in a new entry.
class IntegratedPipeline final : public Pipeline {
 public:
  struct Faults {
    // Leave ToS untouched on the hit path. Exists so the differential
    // checker can prove it notices a broken pipeline.
    bool skip_hit_dscp = false;
  };

  explicit IntegratedPipeline(PipelineConfig cfg);
  IntegratedPipeline(PipelineConfig cfg, Faults faults);

  PipelineKind kind() const override { return PipelineKind::Integrated; }
  Verdict process(const Packet& p) override;

  // Swaps in a new routing table and repairs the cached next hops.
  ReresolveReport replace_routes(std::shared_ptr<const RoutingTable> routes);

  const SessionTable& table() const { return table_; }
  SessionTable& table() { return table_; }
  const PipelineConfig& config() const { return cfg_; }

 private:
  Verdict miss_path(const Packet& p, bool lan_to_lan, LookupAccounting& acct);

  PipelineConfig cfg_;
  Faults faults_;
  SessionTable table_;
};

}  // namespace edgert
