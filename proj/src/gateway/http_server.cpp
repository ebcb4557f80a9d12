#include "logiciot/gateway/http_server.hpp"

#include <stdexcept>

#include <httplib.h>

namespace logiciot::gateway
{

namespace
{

void reply(httplib::Response & res, const Response & r)
{
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace

HttpServer::HttpServer() : server_(std::make_unique<httplib::Server>())
{
  // httplib's default also sets SO_REUSEPORT, which lets a second instance
  // share an occupied port.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server_->Get(R"(/rel/([^/]+)/insert)", [this](const httplib::Request & req, httplib::Response & res) {
    reply(res, gateway_->handle_ingest(req.matches[1], req.params));
  });
  server_->Get(R"(/rel/([^/]+)/read)", [this](const httplib::Request & req, httplib::Response & res) {
    reply(res, gateway_->handle_read(req.matches[1], req.params));
  });
  server_->Get(R"(/endpoint/([^/]+))", [this](const httplib::Request & req, httplib::Response & res) {
    reply(res, gateway_->handle_endpoint(req.matches[1], req.params));
  });
  server_->Get("/healthz", [this](const httplib::Request &, httplib::Response & res) {
    reply(res, gateway_->handle_health());
  });
  server_->set_error_handler([](const httplib::Request &, httplib::Response & res) {
    if (res.body.empty()) res.set_content(R"({"error":"not found"})", "application/json");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string & host, int port)
{
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    if (port_ < 0) throw std::runtime_error("cannot bind " + host);
  } else {
    if (!server_->bind_to_port(host, port)) {
      throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
  }
  return port_;
}

void HttpServer::start(const Gateway & gateway)
{
  if (thread_.joinable() || port_ < 0) return;
  gateway_ = &gateway;
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpServer::stop()
{
  if (!thread_.joinable()) return;
  server_->stop();
  thread_.join();
}

}  // namespace logiciot::gateway
