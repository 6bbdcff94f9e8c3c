// Command-line harness: trace generation, single-pipeline runs, differential
// comparison and benchmarking of the baseline and integrated pipelines.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "edgert/baseline_pipeline.hpp"
#include "edgert/config.hpp"
#include "edgert/harness.hpp"
#include "edgert/integrated_pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiverged = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTrace = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  edgert::ConfigFiles files;
  std::string lan_prefix = "10.0.0.0/8";
  std::size_t capacity = edgert::SessionTable::kDefaultCapacity;
  double established_timeout = 300;
  double transitory_timeout = 30;
  double other_timeout = 60;
};

struct SpecOptions {
  std::size_t sessions = 10;
  std::size_t packets = 1000;
  double tcp_mix = 1.0;
  std::string peers = "198.51.100.9,198.51.100.10,203.0.113.50,8.8.8.8";
  std::uint64_t seed = 1;
  std::int64_t step_us = 100;
};

void add_config_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--rules", o.files.rules, "Filter rules file (default: accept all)");
  cmd->add_option("--routes", o.files.routes, "Routes file (default: built-in table)");
  cmd->add_option("--nat", o.files.nat, "NAT config file (default: 192.0.2.1, ports 40000-49999)");
  cmd->add_option("--qos", o.files.qos, "QoS policy file (default: empty, DSCP 0)");
  cmd->add_option("--lan-prefix", o.lan_prefix, "Protected LAN prefix")->capture_default_str();
  cmd->add_option("--capacity", o.capacity, "Session table capacity")->capture_default_str();
  cmd->add_option("--timeout-established", o.established_timeout, "TCP established timeout, seconds")
      ->capture_default_str();
  cmd->add_option("--timeout-transitory", o.transitory_timeout, "TCP handshake/teardown timeout, seconds")
      ->capture_default_str();
  cmd->add_option("--timeout-other", o.other_timeout, "Non-TCP timeout, seconds")->capture_default_str();
}

void add_spec_flags(CLI::App* cmd, SpecOptions& s) {
  cmd->add_option("--sessions", s.sessions, "Number of synthetic sessions")->capture_default_str();
  cmd->add_option("--packets", s.packets, "Packets per session")->capture_default_str();
  cmd->add_option("--tcp-mix", s.tcp_mix, "Fraction of TCP sessions in [0,1]")->capture_default_str();
  cmd->add_option("--peers", s.peers, "Comma-separated external peer addresses")->capture_default_str();
  cmd->add_option("--seed", s.seed, "Generator seed")->capture_default_str();
  cmd->add_option("--step-us", s.step_us, "Microseconds between consecutive packets")->capture_default_str();
}

edgert::LogicalTime seconds(double s) {
  return edgert::LogicalTime{static_cast<std::int64_t>(s * 1e6 + 0.5)};
}

edgert::PipelineConfig load(const CommonOptions& o) {
  try {
    auto cfg = edgert::load_config(o.files, edgert::Cidr::parse(o.lan_prefix));
    cfg.capacity = o.capacity;
    cfg.timeouts.tcp_established = seconds(o.established_timeout);
    cfg.timeouts.tcp_transitory = seconds(o.transitory_timeout);
    cfg.timeouts.other = seconds(o.other_timeout);
    cfg.validate();
    return cfg;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

edgert::TraceSpec make_spec(const SpecOptions& s, const CommonOptions& o) {
  try {
    edgert::TraceSpec spec;
    spec.session_count = s.sessions;
    spec.packets_per_session = s.packets;
    spec.tcp_mix = s.tcp_mix;
    spec.lan_prefix = edgert::Cidr::parse(o.lan_prefix);
    spec.seed = s.seed;
    spec.step = edgert::LogicalTime{s.step_us};
    std::stringstream peers(s.peers);
    for (std::string item; std::getline(peers, item, ',');)
      if (!item.empty()) spec.peer_pool.push_back(edgert::IpAddress::parse(item));
    if (o.files.nat) spec.nat = edgert::NatConfig::parse(edgert::read_file(*o.files.nat));
    spec.validate();
    return spec;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

std::vector<edgert::Packet> load_trace(const std::string& path) {
  try {
    if (path == "-") return edgert::parse_trace(std::cin);
    return edgert::parse_trace(edgert::read_file(path));
  } catch (const std::exception& e) {
    throw TraceError(path + ": " + e.what());
  }
}

// Writes through `fn` to a file, or stdout when path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrated session table vs. conventional router pipeline"};
  app.require_subcommand(1);

  CommonOptions common;
  SpecOptions spec_opts;
  std::string trace_path;
  std::string out_path;
  std::string verdicts_path;
  std::string dump_path;
  std::string pipeline_name = "integrated";
  std::string fault;
  std::size_t reps = 5;
  bool timing = false;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
  add_spec_flags(gen, spec_opts);
  gen->add_option("--lan-prefix", common.lan_prefix, "Protected LAN prefix")->capture_default_str();
  gen->add_option("--nat", common.files.nat, "NAT config used to address replies");
  gen->add_option("--out", out_path, "Output trace (default stdout)");

  auto* run = app.add_subcommand("run", "Run one pipeline over a trace");
  add_config_flags(run, common);
  run->add_option("--trace", trace_path, "Trace file ('-' for stdin)")->required();
  run->add_option("--pipeline", pipeline_name, "baseline|integrated")
      ->check(CLI::IsMember({"baseline", "integrated"}))
      ->capture_default_str();
  run->add_option("--out", out_path, "Metrics CSV (default stdout)");
  run->add_option("--verdicts", verdicts_path, "Per-packet verdict stream");
  run->add_option("--dump-table", dump_path, "Integrated session table CSV after the run");
  run->add_flag("--timing", timing, "Fill in wall_ns (makes the output run-dependent)");

  auto* cmp = app.add_subcommand("compare", "Check both pipelines produce identical verdicts");
  add_config_flags(cmp, common);
  cmp->add_option("--trace", trace_path, "Trace file ('-' for stdin)")->required();
  cmp->add_option("--out", out_path, "Report destination (default stdout)");
  cmp->add_option("--inject-fault", fault, "Break the integrated pipeline on purpose")
      ->check(CLI::IsMember({"skip-hit-dscp"}));

  auto* bnc = app.add_subcommand("bench", "Time both pipelines over repeated runs");
  add_config_flags(bnc, common);
  add_spec_flags(bnc, spec_opts);
  bnc->add_option("--trace", trace_path, "Trace file; generated from the spec flags when omitted");
  bnc->add_option("--reps", reps, "Repetitions per pipeline")->check(CLI::PositiveNumber)->capture_default_str();
  bnc->add_option("--out", out_path, "CSV destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) {
      auto spec = make_spec(spec_opts, common);
      std::string text = edgert::generate_trace(spec);
      emit(out_path, [&](std::ostream& os) { os << text; });
      return kExitOk;
    }

    auto cfg = load(common);

    if (*run) {
      auto packets = load_trace(trace_path);
      auto kind = pipeline_name == "baseline" ? edgert::PipelineKind::Baseline : edgert::PipelineKind::Integrated;
      auto pipeline = edgert::make_pipeline(kind, cfg);
      auto result = edgert::run(*pipeline, packets, !verdicts_path.empty());
      if (!timing) result.report.wall_ns = 0;
      emit(out_path, [&](std::ostream& os) { edgert::write_metrics_csv(os, std::span(&result.report, 1)); });
      if (!verdicts_path.empty())
        emit(verdicts_path, [&](std::ostream& os) { edgert::write_verdicts(os, result.verdicts); });
      if (!dump_path.empty()) {
        auto* integrated = dynamic_cast<edgert::IntegratedPipeline*>(pipeline.get());
        if (!integrated) throw ConfigError("--dump-table requires --pipeline integrated");
        emit(dump_path, [&](std::ostream& os) { integrated->table().dump_csv(os); });
      }
      return kExitOk;
    }

    if (*cmp) {
      auto packets = load_trace(trace_path);
      edgert::BaselinePipeline baseline(cfg);
      edgert::IntegratedPipeline integrated(cfg, {.skip_hit_dscp = fault == "skip-hit-dscp"});
      auto result = edgert::compare(baseline, integrated, packets);
      emit(out_path, [&](std::ostream& os) { edgert::write_compare_report(os, result, packets); });
      return result.pass ? kExitOk : kExitDiverged;
    }

    if (*bnc) {
      auto packets = trace_path.empty() ? edgert::generate_packets(make_spec(spec_opts, common))
                                        : load_trace(trace_path);
      auto result = edgert::bench(cfg, packets, reps);
      emit(out_path, [&](std::ostream& os) { edgert::write_bench_csv(os, result); });
      std::cerr << "median wall time: baseline " << result.rows[result.baseline_median].wall_ns
                << " ns, integrated " << result.rows[result.integrated_median].wall_ns
                << " ns, ratio " << result.wall_ratio() << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const TraceError& e) {
    std::cerr << "trace error: " << e.what() << '\n';
    return kExitTrace;
  }
  return kExitOk;
}
