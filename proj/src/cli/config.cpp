#include "logiciot/cli/config.hpp"

#include <charconv>
#include <fstream>

namespace logiciot::cli
{

namespace
{

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

long long to_integer(const std::string & key, const std::string & value)
{
  long long n = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw ConfigError("'" + key + "' needs an integer, got '" + value + "'");
  }
  return n;
}

std::size_t to_positive(const std::string & key, const std::string & value)
{
  auto n = to_integer(key, value);
  if (n <= 0) throw ConfigError("'" + key + "' must be positive");
  return static_cast<std::size_t>(n);
}

}  // namespace

engine::EngineConfig RunConfig::engine_config() const
{
  engine::EngineConfig ec;
  ec.store.default_capacity = window;
  ec.store.capacity_overrides = window_overrides;
  ec.max_cascade = cascade;
  if (!log.empty()) ec.persist_path = log;
  ec.webhooks = webhooks;
  ec.call_timeout_ms = timeout_ms;
  ec.retain_firing_log = false;
  return ec;
}

void apply_config(std::istream & in, RunConfig & config)
{
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(std::string_view(text).substr(0, eq));
    const auto value = trim(std::string_view(text).substr(eq + 1));
    try {
      if (key == "host") {
        config.host = value;
      } else if (key == "port") {
        config.port = static_cast<int>(to_integer(key, value));
      } else if (key == "window") {
        config.window = to_positive(key, value);
      } else if (key.rfind("window.", 0) == 0 && key.size() > 7) {
        config.window_overrides[key.substr(7)] = to_positive(key, value);
      } else if (key == "log") {
        config.log = value;
      } else if (key.rfind("webhook.", 0) == 0 && key.size() > 8) {
        config.webhooks[key.substr(8)] = value;
      } else if (key == "cascade") {
        config.cascade = static_cast<int>(to_positive(key, value));
      } else if (key == "timeout") {
        config.timeout_ms = static_cast<int>(to_positive(key, value));
      } else if (key == "module_base") {
        config.module_base = value;
      } else if (key == "queue") {
        config.queue = to_positive(key, value);
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError & e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(const std::string & path, RunConfig & config)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    apply_config(in, config);
  } catch (const ConfigError & e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void validate(const RunConfig & config)
{
  if (config.port < 0 || config.port > 65535) throw ConfigError("port out of range: " + std::to_string(config.port));
  if (config.window == 0) throw ConfigError("window must be positive");
  for (const auto & [rel, w] : config.window_overrides) {
    if (w == 0) throw ConfigError("window for " + rel + " must be positive");
  }
  if (config.cascade <= 0) throw ConfigError("cascade limit must be positive");
  if (config.timeout_ms <= 0) throw ConfigError("timeout must be positive");
  if (config.queue == 0) throw ConfigError("queue capacity must be positive");
}

}  // namespace logiciot::cli
