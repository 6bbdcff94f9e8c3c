#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgert/nat.hpp"
#include "edgert/packet.hpp"
#include "edgert/pipeline.hpp"
#include "edgert/verdict.hpp"

namespace edgert {

// Parameters of a synthetic trace. Expansion is a pure function of the spec.
struct TraceSpec {
  std::size_t session_count = 10;
  std::size_t packets_per_session = 1000;
  double tcp_mix = 1.0;  // fraction of sessions that are TCP
  Cidr lan_prefix = Cidr::parse("10.0.0.0/8");
  std::vector<IpAddress> peer_pool;
  std::uint64_t seed = 1;
  // Used to predict the gateway port replies are addressed to.
  NatConfig nat;
  LogicalTime step = std::chrono::microseconds(100);

  void validate() const;
};

// TCP sessions: SYN, SYN+ACK, ACK, alternating data, then FIN, FIN, ACK
// when at least 7 packets are requested. UDP sessions alternate request
// and response. Sessions are interleaved round-robin, one packet per step.
std::vector<Packet> generate_packets(const TraceSpec& spec);
std::string generate_trace(const TraceSpec& spec);

struct MetricsReport {
  PipelineKind pipeline = PipelineKind::Baseline;
  std::uint64_t packets = 0;
  std::uint64_t forwarded = 0;
  std::array<std::uint64_t, kDropReasonCount> dropped_by{};
  std::uint64_t session_hits = 0;
  std::uint64_t session_misses = 0;
  LookupAccounting lookups;
  std::int64_t wall_ns = 0;

  std::uint64_t dropped() const;
  std::uint64_t dropped(DropReason r) const { return dropped_by[static_cast<std::size_t>(r)]; }
  // forwarded + dropped == packets and hit/miss counts fit the lookups made.
  bool identities_hold() const;

  void record(const Verdict& v);
};

struct RunResult {
  MetricsReport report;
  std::vector<Verdict> verdicts;  // empty unless requested
};

// Processes every packet in order. Wall time covers the packet loop only.
RunResult run(Pipeline& pipeline, std::span<const Packet> packets, bool keep_verdicts = true);
RunResult run(PipelineKind kind, const PipelineConfig& cfg, std::span<const Packet> packets,
              bool keep_verdicts = true);

// One line per packet: `<index> <outcome> | <accounting>`.
void write_verdicts(std::ostream& out, std::span<const Verdict> verdicts);

struct CompareResult {
  bool pass = true;
  std::optional<std::size_t> first_divergence;
  std::optional<Verdict> baseline_verdict;
  std::optional<Verdict> integrated_verdict;
  MetricsReport baseline;
  MetricsReport integrated;
};

// Runs both pipelines from fresh state and checks the verdict streams are
// observably identical.
CompareResult compare(const PipelineConfig& cfg, std::span<const Packet> packets);
CompareResult compare(Pipeline& baseline, Pipeline& integrated, std::span<const Packet> packets);

void write_compare_report(std::ostream& out, const CompareResult& r, std::span<const Packet> packets);

struct BenchResult {
  std::vector<MetricsReport> rows;  // pipeline-major: baseline reps, then integrated reps
  std::size_t baseline_median = 0;   // index into rows
  std::size_t integrated_median = 0;

  double wall_ratio() const;  // baseline median wall / integrated median wall
};

BenchResult bench(const PipelineConfig& cfg, std::span<const Packet> packets, std::size_t repetitions);

inline constexpr const char* kMetricsCsvHeader =
    "pipeline,packets,forwarded,dropped,session_hits,session_misses,nat_lookups,session_lookups,"
    "rule_evals,rules_scanned,qos_classifications,route_lookups,wall_ns";

void write_csv_row(std::ostream& out, const MetricsReport& r);
void write_metrics_csv(std::ostream& out, std::span<const MetricsReport> rows);
// Rows plus `# median,...` comment lines marking the median repetitions.
void write_bench_csv(std::ostream& out, const BenchResult& b);
void write_report(std::ostream& out, const MetricsReport& r);

}  // namespace edgert
