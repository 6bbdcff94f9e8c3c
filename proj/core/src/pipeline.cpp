#include "edgert/pipeline.hpp"

#include "edgert/baseline_pipeline.hpp"
#include "edgert/integrated_pipeline.hpp"

namespace edgert {

void PipelineConfig::validate() const {
  if (!rules || !routes || !qos) throw ParseError("pipeline config is missing a table");
  if (nat.port_lo > nat.port_hi || nat.port_lo == 0) throw ParseError("NAT port range is empty");
  if (lan_prefix.contains(nat.public_addr))
    throw ParseError("public NAT address " + nat.public_addr.to_string() + " lies inside LAN prefix " +
                     lan_prefix.to_string());
  if (!timeouts.valid()) throw ParseError("timeouts must be positive");
  if (capacity == 0) throw ParseError("session table capacity must be positive");
}

std::string_view to_string(PipelineKind k) {
  return k == PipelineKind::Baseline ? "baseline" : "integrated";
}

std::unique_ptr<Pipeline> make_pipeline(PipelineKind kind, const PipelineConfig& cfg) {
  if (kind == PipelineKind::Baseline) return std::make_unique<BaselinePipeline>(cfg);
  return std::make_unique<IntegratedPipeline>(cfg);
}

}  // namespace edgert
