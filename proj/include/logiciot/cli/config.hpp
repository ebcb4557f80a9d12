#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>

#include "logiciot/engine/engine.hpp"

namespace logiciot::cli
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Settings for `run`. Loaded from a key=value file, then overridden by flags.
struct RunConfig
{
  std::string source;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t window = 1024;
  std::map<std::string, std::size_t> window_overrides;
  std::string log;
  std::map<std::string, std::string> webhooks;
  int cascade = 64;
  int timeout_ms = 5000;
  std::string module_base;
  std::size_t queue = 10000;

  engine::EngineConfig engine_config() const;
};

/// One `key = value` per line; `#` comments and blank lines ignored.
/// Keys: host, port, window, window.<REL>, log, webhook.<REL>, cascade,
/// timeout, module_base, queue. Throws ConfigError naming the line.
void apply_config(std::istream & in, RunConfig & config);
void apply_config_file(const std::string & path, RunConfig & config);

/// Throws ConfigError for any non-positive limit or out-of-range port.
void validate(const RunConfig & config);

}  // namespace logiciot::cli
