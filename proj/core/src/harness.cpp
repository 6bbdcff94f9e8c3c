#include "edgert/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "edgert/baseline_pipeline.hpp"
#include "edgert/integrated_pipeline.hpp"

namespace edgert {

void TraceSpec::validate() const {
  if (session_count == 0) throw ParseError("session count must be positive");
  if (packets_per_session == 0) throw ParseError("packets per session must be positive");
  if (!(tcp_mix >= 0.0 && tcp_mix <= 1.0)) throw ParseError("tcp mix must lie in [0, 1]");
  if (peer_pool.empty()) throw ParseError("peer pool is empty");
  for (auto peer : peer_pool)
    if (lan_prefix.contains(peer)) throw ParseError("peer " + peer.to_string() + " lies inside the LAN prefix");
  if (lan_prefix.contains(nat.public_addr)) throw ParseError("public NAT address lies inside the LAN prefix");
  if (step.count() <= 0) throw ParseError("time step must be positive");
}

namespace {

constexpr std::array<std::uint16_t, 4> kTcpPorts = {80, 443, 22, 8080};
constexpr std::array<std::uint16_t, 4> kUdpPorts = {53, 123, 5060, 5061};

struct SyntheticSession {
  bool tcp = true;
  Endpoint lan;
  Endpoint peer;
  Endpoint gwy;
};

// Raw engine output only: distributions are not portable across standard
// libraries, and traces must be byte-identical everywhere.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

Packet session_packet(const SyntheticSession& s, std::size_t r, std::size_t n, Draw& draw) {
  bool outbound = true;
  Packet p;
  if (s.tcp) {
    p.sid.ip_proto = kProtoTcp;
    const std::size_t teardown = n >= 7 ? 3 : 0;
    const std::size_t data = n - std::min<std::size_t>(n, 3) - teardown;
    if (r == 0) {
      p.flags = {.syn = true};
    } else if (r == 1) {
      p.flags = {.syn = true, .ack = true};
      outbound = false;
    } else if (r == 2) {
      p.flags = {.ack = true};
    } else if (r < 3 + data) {
      outbound = (r - 3) % 2 == 0;
      p.flags = {.ack = true};
      p.payload_len = static_cast<std::uint16_t>(1 + draw.below(1460));
    } else {
      auto j = r - 3 - data;
      outbound = j != 1;
      p.flags = j == 2 ? TcpFlags{.ack = true} : TcpFlags{.ack = true, .fin = true};
    }
  } else {
    p.sid.ip_proto = kProtoUdp;
    outbound = r % 2 == 0;
    p.payload_len = static_cast<std::uint16_t>(16 + draw.below(497));
  }
  if (outbound) {
    p.sid.src_addr = s.lan.addr;
    p.sid.src_port = s.lan.port;
    p.sid.dst_addr = s.peer.addr;
    p.sid.dst_port = s.peer.port;
  } else {
    p.sid.src_addr = s.peer.addr;
    p.sid.src_port = s.peer.port;
    p.sid.dst_addr = s.gwy.addr;
    p.sid.dst_port = s.gwy.port;
  }
  return p;
}

}  // namespace

std::vector<Packet> generate_packets(const TraceSpec& spec) {
  spec.validate();
  Draw draw(spec.seed);

  const std::uint64_t lan_size = std::uint64_t{1} << (32 - spec.lan_prefix.length());
  std::vector<SyntheticSession> sessions;
  sessions.reserve(spec.session_count);
  std::set<OutboundKey> used;
  std::map<std::tuple<IpAddress, std::uint16_t, std::uint8_t>, std::uint32_t> per_peer;

  for (std::size_t i = 0; i < spec.session_count; ++i) {
    SyntheticSession s;
    s.tcp = draw.unit() < spec.tcp_mix;
    const auto& ports = s.tcp ? kTcpPorts : kUdpPorts;
    const std::uint8_t proto = s.tcp ? kProtoTcp : kProtoUdp;
    for (;;) {
      std::uint64_t host = lan_size > 2 ? 1 + draw.below(lan_size - 2) : draw.below(lan_size);
      s.lan = {IpAddress{static_cast<std::uint32_t>(spec.lan_prefix.network().value() + host)},
               static_cast<std::uint16_t>(1024 + draw.below(64512))};
      s.peer = {spec.peer_pool[draw.below(spec.peer_pool.size())], ports[draw.below(ports.size())]};
      if (used.insert({s.lan.addr, s.lan.port, s.peer.addr, s.peer.port, proto}).second) break;
    }
    auto& count = per_peer[{s.peer.addr, s.peer.port, proto}];
    std::uint32_t port = count < spec.nat.pool_size() ? spec.nat.port_lo + count : spec.nat.port_lo;
    ++count;
    s.gwy = {spec.nat.public_addr, static_cast<std::uint16_t>(port)};
    sessions.push_back(s);
  }

  std::vector<Packet> packets;
  packets.reserve(spec.session_count * spec.packets_per_session);
  for (std::size_t r = 0; r < spec.packets_per_session; ++r) {
    for (const auto& s : sessions) {
      Packet p = session_packet(s, r, spec.packets_per_session, draw);
      p.ts = spec.step * static_cast<std::int64_t>(packets.size());
      packets.push_back(p);
    }
  }
  return packets;
}

std::string generate_trace(const TraceSpec& spec) {
  std::ostringstream out;
  render_trace(out, generate_packets(spec));
  return out.str();
}

std::uint64_t MetricsReport::dropped() const {
  return std::accumulate(dropped_by.begin(), dropped_by.end(), std::uint64_t{0});
}

bool MetricsReport::identities_hold() const {
  return forwarded + dropped() == packets && session_hits + session_misses <= packets &&
         session_hits + session_misses <= lookups.session_lookups &&
         lookups.rule_evals <= session_misses;
}

void MetricsReport::record(const Verdict& v) {
  ++packets;
  if (const auto* d = v.as_dropped())
    ++dropped_by[static_cast<std::size_t>(d->reason)];
  else
    ++forwarded;
  if (v.session == SessionOutcome::Hit) ++session_hits;
  if (v.session == SessionOutcome::Miss) ++session_misses;
  lookups += v.lookups;
}

RunResult run(Pipeline& pipeline, std::span<const Packet> packets, bool keep_verdicts) {
  RunResult result;
  result.report.pipeline = pipeline.kind();
  if (keep_verdicts) result.verdicts.reserve(packets.size());

  const auto start = std::chrono::steady_clock::now();
  for (const auto& p : packets) {
    Verdict v = pipeline.process(p);
    result.report.record(v);
    if (keep_verdicts) result.verdicts.push_back(std::move(v));
  }
  const auto stop = std::chrono::steady_clock::now();
  result.report.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return result;
}

RunResult run(PipelineKind kind, const PipelineConfig& cfg, std::span<const Packet> packets, bool keep_verdicts) {
  auto pipeline = make_pipeline(kind, cfg);
  return run(*pipeline, packets, keep_verdicts);
}

void write_verdicts(std::ostream& out, std::span<const Verdict> verdicts) {
  for (std::size_t i = 0; i < verdicts.size(); ++i)
    out << i << ' ' << describe_outcome(verdicts[i]) << " | " << to_string(verdicts[i].lookups) << '\n';
}

CompareResult compare(Pipeline& baseline, Pipeline& integrated, std::span<const Packet> packets) {
  auto b = run(baseline, packets, true);
  auto i = run(integrated, packets, true);
  CompareResult r;
  r.baseline = b.report;
  r.integrated = i.report;
  for (std::size_t k = 0; k < packets.size(); ++k) {
    if (!observably_equal(b.verdicts[k], i.verdicts[k])) {
      r.pass = false;
      r.first_divergence = k;
      r.baseline_verdict = b.verdicts[k];
      r.integrated_verdict = i.verdicts[k];
      break;
    }
  }
  return r;
}

CompareResult compare(const PipelineConfig& cfg, std::span<const Packet> packets) {
  BaselinePipeline baseline(cfg);
  IntegratedPipeline integrated(cfg);
  return compare(baseline, integrated, packets);
}

void write_compare_report(std::ostream& out, const CompareResult& r, std::span<const Packet> packets) {
  if (r.pass) {
    out << "PASS: " << packets.size() << " packets, verdict streams identical\n";
  } else {
    auto k = *r.first_divergence;
    out << "FAIL: first divergence at packet " << k << '\n'
        << "  packet:     " << render_trace_record(packets[k]) << '\n'
        << "  baseline:   " << describe_outcome(*r.baseline_verdict) << '\n'
        << "  integrated: " << describe_outcome(*r.integrated_verdict) << '\n';
  }
  write_report(out, r.baseline);
  write_report(out, r.integrated);
}

double BenchResult::wall_ratio() const {
  auto integrated = rows.at(integrated_median).wall_ns;
  return integrated > 0 ? static_cast<double>(rows.at(baseline_median).wall_ns) / integrated : 0.0;
}

BenchResult bench(const PipelineConfig& cfg, std::span<const Packet> packets, std::size_t repetitions) {
  if (repetitions == 0) throw ParseError("repetitions must be at least 1");
  BenchResult b;
  for (auto kind : {PipelineKind::Baseline, PipelineKind::Integrated})
    for (std::size_t rep = 0; rep < repetitions; ++rep) b.rows.push_back(run(kind, cfg, packets, false).report);

  auto median_of = [&](std::size_t first) {
    std::vector<std::size_t> idx(repetitions);
    std::iota(idx.begin(), idx.end(), first);
    std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return b.rows[x].wall_ns < b.rows[y].wall_ns; });
    return idx[(repetitions - 1) / 2];
  };
  b.baseline_median = median_of(0);
  b.integrated_median = median_of(repetitions);
  return b;
}

void write_csv_row(std::ostream& out, const MetricsReport& r) {
  const auto& a = r.lookups;
  out << to_string(r.pipeline) << ',' << r.packets << ',' << r.forwarded << ',' << r.dropped() << ','
      << r.session_hits << ',' << r.session_misses << ',' << a.nat_lookups << ',' << a.session_lookups << ','
      << a.rule_evals << ',' << a.rules_scanned << ',' << a.qos_classifications << ',' << a.route_lookups << ','
      << r.wall_ns << '\n';
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsReport> rows) {
  out << kMetricsCsvHeader << '\n';
  for (const auto& r : rows) write_csv_row(out, r);
}

void write_bench_csv(std::ostream& out, const BenchResult& b) {
  write_metrics_csv(out, b.rows);
  const std::size_t reps = b.rows.size() / 2;
  for (auto [idx, first] : {std::pair{b.baseline_median, std::size_t{0}}, std::pair{b.integrated_median, reps}})
    out << "# median," << to_string(b.rows[idx].pipeline) << ",rep=" << idx - first
        << ",wall_ns=" << b.rows[idx].wall_ns << '\n';
  out << "# wall_ratio_baseline_over_integrated," << b.wall_ratio() << '\n';
}

void write_report(std::ostream& out, const MetricsReport& r) {
  out << to_string(r.pipeline) << ": packets=" << r.packets << " forwarded=" << r.forwarded
      << " dropped=" << r.dropped();
  for (auto reason : kAllDropReasons)
    if (auto n = r.dropped(reason)) out << ' ' << to_string(reason) << '=' << n;
  out << "\n  session hits=" << r.session_hits << " misses=" << r.session_misses << "\n  lookups "
      << to_string(r.lookups) << " total=" << r.lookups.table_consultations() << "\n  wall_ns=" << r.wall_ns
      << '\n';
}

}  // namespace edgert
