#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "edgert/pipeline.hpp"

namespace edgert {

// Built-in configuration used when a file is not supplied.
std::string_view default_rules_text();
std::string_view default_routes_text();
std::string_view default_nat_text();

struct ConfigFiles {
  std::optional<std::string> rules;
  std::optional<std::string> routes;
  std::optional<std::string> nat;
  std::optional<std::string> qos;
};

// Throws ParseError (prefixed with the file name) for unreadable or
// malformed files.
PipelineConfig load_config(const ConfigFiles& files, const Cidr& lan_prefix);

std::string read_file(const std::string& path);

}  // namespace edgert
