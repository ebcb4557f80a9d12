#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "logiciot/cli/config.hpp"
#include "logiciot/cli/runtime.hpp"
#include "logiciot/cli/simulate.hpp"
#include "logiciot/engine/script.hpp"
#include "logiciot/lang/parser.hpp"

namespace
{

using namespace logiciot;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Prints diagnostics and returns nullopt for invalid programs.
std::optional<lang::Program> load(const std::string & path)
{
  const auto source = read_file(path);
  try {
    return lang::parse_program(source);
  } catch (const lang::ParseError & e) {
    std::cerr << e.diagnostic().render(path) << "\n";
    return std::nullopt;
  }
}

int cmd_check(const std::string & path)
{
  return load(path) ? kOk : kFailed;
}

int cmd_run(cli::RunConfig config)
{
  auto program = load(config.source);
  if (!program) return kFailed;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::unique_ptr<cli::Runtime> runtime;
  try {
    runtime = std::make_unique<cli::Runtime>(*program, config);
  } catch (const std::exception & e) {
    spdlog::error("{}", e.what());
    return kFailed;
  }
  runtime->start();
  spdlog::info("listening on {}:{}", config.host, runtime->port());

  int sig = 0;
  sigwait(&signals, &sig);
  spdlog::info("signal {}, shutting down", sig);
  runtime->stop();
  return kOk;
}

int cmd_simulate(const cli::SimProfile & profile)
{
  auto result = cli::run_simulation(profile);
  std::cout << cli::summary(result) << std::endl;
  return result.err > 0 ? kFailed : kOk;
}

int cmd_script(const std::string & path, const std::string & script_path, const cli::RunConfig & config)
{
  auto program = load(path);
  if (!program) return kFailed;
  std::ifstream in(script_path);
  if (!in) throw UsageError("cannot read " + script_path);
  std::vector<engine::ScriptStep> steps;
  try {
    steps = engine::parse_script(in);
  } catch (const engine::ScriptError & e) {
    std::cerr << script_path << ":" << e.line() << ": " << e.what() << "\n";
    return kFailed;
  }
  auto ec = config.engine_config();
  ec.persist_path.reset();
  ec.retain_firing_log = true;
  const auto result = engine::run_script(*program, steps, ec);
  std::cout << engine::export_firing_log(result.firings);
  for (const auto & err : result.errors) std::cerr << "error: " << err << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  spdlog::set_default_logger(spdlog::stderr_color_mt("logiciot"));

  CLI::App app{"LogicIoT interpreter and runtime"};
  app.require_subcommand(1);

  std::string check_path;
  auto * check = app.add_subcommand("check", "Parse and validate a program");
  check->add_option("file", check_path)->required();

  cli::RunConfig run_config;
  std::string config_file;
  std::optional<int> port;
  std::optional<std::string> host, log, module_base;
  std::optional<std::size_t> window;
  std::optional<int> cascade, timeout;
  std::vector<std::string> webhooks;
  auto * run = app.add_subcommand("run", "Serve a program over HTTP until interrupted");
  run->add_option("file", run_config.source)->required();
  run->add_option("--config", config_file, "key=value settings file");
  run->add_option("--port", port, "Listen port (0 picks one)");
  run->add_option("--host", host, "Listen address");
  run->add_option("--log", log, "Persistence log path");
  run->add_option("--window", window, "Default window size");
  run->add_option("--cascade", cascade, "Maximum insert nesting");
  run->add_option("--timeout", timeout, "Outbound call timeout in ms");
  run->add_option("--webhook", webhooks, "REL=URL, repeatable");
  run->add_option("--module-base", module_base, "Base URL for relative MAP targets");

  cli::SimProfile profile;
  std::vector<std::string> gens;
  auto * sim = app.add_subcommand("simulate", "Send seeded synthetic readings to a running server");
  sim->add_option("--target", profile.target, "Server base URL")->required();
  auto * rel_opt = sim->add_option("--relation", profile.relation);
  auto * ep_opt = sim->add_option("--endpoint", profile.endpoint);
  rel_opt->excludes(ep_opt);
  sim->add_option("--count", profile.count)->required();
  sim->add_option("--period", profile.period_ms, "ms between requests")->check(CLI::NonNegativeNumber);
  sim->add_option("--seed", profile.seed);
  sim->add_option("--gen", gens, "FIELD=const:V | uniform:MIN:MAX | choice:a|b");

  std::string script_program, script_file;
  std::optional<std::size_t> script_window;
  std::optional<int> script_cascade;
  auto * script = app.add_subcommand("script", "Run a JSON Lines script on the virtual clock");
  script->add_option("file", script_program)->required();
  script->add_option("script", script_file)->required();
  script->add_option("--window", script_window);
  script->add_option("--cascade", script_cascade);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(check_path);

    if (*run) {
      if (!config_file.empty()) cli::apply_config_file(config_file, run_config);
      if (port) run_config.port = *port;
      if (host) run_config.host = *host;
      if (log) run_config.log = *log;
      if (window) run_config.window = *window;
      if (cascade) run_config.cascade = *cascade;
      if (timeout) run_config.timeout_ms = *timeout;
      if (module_base) run_config.module_base = *module_base;
      for (const auto & w : webhooks) {
        const auto eq = w.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--webhook expects REL=URL, got '" + w + "'");
        run_config.webhooks[w.substr(0, eq)] = w.substr(eq + 1);
      }
      cli::validate(run_config);
      return cmd_run(run_config);
    }

    if (*sim) {
      if (profile.relation.empty() == profile.endpoint.empty()) {
        throw UsageError("simulate needs exactly one of --relation or --endpoint");
      }
      for (const auto & g : gens) profile.gens.push_back(cli::parse_field_gen(g));
      return cmd_simulate(profile);
    }

    if (*script) {
      cli::RunConfig sc;
      if (script_window) sc.window = *script_window;
      if (script_cascade) sc.cascade = *script_cascade;
      cli::validate(sc);
      return cmd_script(script_program, script_file, sc);
    }
  } catch (const UsageError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cli::ConfigError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cli::GenSpecError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
