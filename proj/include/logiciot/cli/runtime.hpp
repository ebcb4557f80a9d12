#pragma once

#include <memory>

#include "logiciot/cli/config.hpp"
#include "logiciot/engine/event_loop.hpp"
#include "logiciot/gateway/gateway.hpp"
#include "logiciot/gateway/http_outbound.hpp"
#include "logiciot/gateway/http_server.hpp"

namespace logiciot::cli
{

/// A loaded program served over HTTP on the wall clock.
///
/// The constructor binds the listening port before anything else, so a port
/// conflict leaves no log file behind. It then builds the engine (which
/// replays the log) and the gateway. start() begins serving; stop() stops
/// accepting, drains queued events, flushes the log and waits for background
/// deliveries.
class Runtime
{
public:
  Runtime(const lang::Program & program, const RunConfig & config);
  ~Runtime();

  void start();
  void stop();

  int port() const noexcept { return server_.port(); }
  engine::Engine & engine() noexcept { return *engine_; }
  engine::EventQueue & queue() noexcept { return queue_; }
  engine::EventLoop & loop() noexcept { return *loop_; }
  gateway::HttpOutbound & outbound() noexcept { return outbound_; }

private:
  gateway::HttpServer server_;
  gateway::HttpOutbound outbound_;
  engine::WallClock clock_;
  engine::EventQueue queue_;
  std::unique_ptr<engine::Engine> engine_;
  std::unique_ptr<engine::EventLoop> loop_;
  std::unique_ptr<gateway::Gateway> gateway_;
  bool stopped_ = false;
};

}  // namespace logiciot::cli
