#include "logiciot/cli/runtime.hpp"

#include <spdlog/spdlog.h>

namespace logiciot::cli
{

namespace
{

gateway::OutboundConfig outbound_config(const RunConfig & config)
{
  gateway::OutboundConfig oc;
  oc.module_base = config.module_base;
  oc.background_timeout_ms = config.timeout_ms;
  return oc;
}

void check_relation_names(const lang::Program & program, const RunConfig & config)
{
  auto known = [&](const std::string & name) { return program.find_relation(name) != nullptr; };
  for (const auto & [rel, w] : config.window_overrides) {
    if (!known(rel)) throw ConfigError("window override for unknown relation '" + rel + "'");
  }
  for (const auto & [rel, url] : config.webhooks) {
    if (!known(rel)) throw ConfigError("webhook for unknown relation '" + rel + "'");
  }
}

}  // namespace

Runtime::Runtime(const lang::Program & program, const RunConfig & config)
  : outbound_(outbound_config(config)), queue_(config.queue)
{
  validate(config);
  check_relation_names(program, config);
  server_.bind(config.host, config.port);
  engine_ = std::make_unique<engine::Engine>(program, config.engine_config(), clock_, outbound_);
  if (engine_->replayed_records() > 0) spdlog::info("replayed {} records", engine_->replayed_records());
  loop_ = std::make_unique<engine::EventLoop>(*engine_, queue_);
  gateway_ = std::make_unique<gateway::Gateway>(engine_->program(), queue_, engine_->store());
}

Runtime::~Runtime() { stop(); }

void Runtime::start()
{
  loop_->start();
  server_.start(*gateway_);
}

void Runtime::stop()
{
  if (stopped_) return;
  stopped_ = true;
  server_.stop();
  loop_->stop();
  outbound_.drain();
}

}  // namespace logiciot::cli
