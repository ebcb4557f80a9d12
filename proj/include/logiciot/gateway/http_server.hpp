#pragma once

#include <memory>
#include <string>
#include <thread>

#include "logiciot/gateway/gateway.hpp"

namespace httplib
{
class Server;
}

namespace logiciot::gateway
{

/// cpp-httplib server in front of a Gateway. Binding happens before the
/// gateway exists (port 0 picks a free port); start() attaches the gateway
/// and listens on a background thread.
class HttpServer
{
public:
  HttpServer();
  ~HttpServer();

  HttpServer(const HttpServer &) = delete;
  HttpServer & operator=(const HttpServer &) = delete;

  /// Returns the bound port; throws std::runtime_error when binding fails.
  int bind(const std::string & host, int port);
  void start(const Gateway & gateway);
  void stop();

  int port() const noexcept { return port_; }

private:
  const Gateway * gateway_ = nullptr;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace logiciot::gateway
