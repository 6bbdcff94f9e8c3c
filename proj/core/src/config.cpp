#include "edgert/config.hpp"

#include <fstream>
#include <sstream>

namespace edgert {

std::string_view default_rules_text() { return "accept any any any any any\n"; }

std::string_view default_routes_text() {
  return "0.0.0.0/0 203.0.113.1 wan\n"
         "10.0.0.0/8 10.0.0.254 lan\n";
}

std::string_view default_nat_text() {
  return "public 192.0.2.1\n"
         "ports 40000-49999\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

template <class Parse>
auto load(const std::optional<std::string>& path, std::string_view fallback, Parse&& parse) {
  if (!path) return parse(fallback);
  std::string text = read_file(*path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(*path + ": " + e.what());
  }
}

}  // namespace

PipelineConfig load_config(const ConfigFiles& files, const Cidr& lan_prefix) {
  PipelineConfig cfg;
  cfg.rules = std::make_shared<const RuleSet>(load(files.rules, default_rules_text(), RuleSet::parse));
  cfg.routes = std::make_shared<const RoutingTable>(load(files.routes, default_routes_text(), RoutingTable::parse));
  cfg.qos = std::make_shared<const QosPolicy>(load(files.qos, "", QosPolicy::parse));
  cfg.nat = load(files.nat, default_nat_text(), NatConfig::parse);
  cfg.lan_prefix = lan_prefix;
  cfg.validate();
  return cfg;
}

}  // namespace edgert
