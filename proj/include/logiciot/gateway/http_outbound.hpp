#pragma once

#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>

#include "logiciot/engine/outbound.hpp"
#include "logiciot/gateway/url.hpp"

namespace httplib
{
class ThreadPool;
}

namespace logiciot::gateway
{

struct OutboundConfig
{
  /// Base URL for relative MAP targets (e.g. "http://127.0.0.1:9000/").
  std::string module_base;
  std::size_t workers = 2;
  std::size_t queue_capacity = 4096;
  std::size_t max_body_bytes = 1 << 20;
  /// Timeout for background webhook and ACALL deliveries.
  int background_timeout_ms = 5000;
};

struct HttpReply
{
  int status = 0;
  std::string body;
};

/// Blocking GET with a total byte cap on the body. Throws
/// engine::ModuleCallError (Timeout, Transport, MalformedBody for an
/// oversized body).
HttpReply http_get(const std::string & url, int timeout_ms, std::size_t max_body_bytes);

/// Outbound HTTP for module calls, remote-relation forwarding and webhooks.
/// Synchronous calls run on the caller's thread; ACALLs and webhooks go to a
/// bounded background pool whose failures are logged and counted.
class HttpOutbound final : public engine::Outbound
{
public:
  explicit HttpOutbound(OutboundConfig config = {});
  ~HttpOutbound() override;

  std::map<std::string, Value> call_module(const engine::ModuleBinding & binding,
                                           const std::vector<Value> & args) override;
  void acall_module(const engine::ModuleBinding & binding, std::vector<Value> args) override;
  void forward_insert(const std::string & target, const lang::RelationDecl & relation,
                      const std::vector<Value> & values, int timeout_ms) override;
  void fire_webhook(const std::string & url, const lang::RelationDecl & relation,
                    const store::Record & record) override;

  /// Waits until every background delivery submitted so far has finished.
  void drain();

  std::size_t delivered() const noexcept { return delivered_.load(); }
  std::size_t failed() const noexcept { return failed_.load(); }

private:
  void submit(std::string url);

  OutboundConfig config_;
  std::unique_ptr<httplib::ThreadPool> pool_;
  std::mutex mu_;
  std::condition_variable idle_;
  std::size_t in_flight_ = 0;
  std::atomic<std::size_t> delivered_{0};
  std::atomic<std::size_t> failed_{0};
};

/// `?p1=..&p2=..` positional module arguments.
QueryPairs module_call_query(const std::vector<Value> & args);

/// `?T=..&<field>=..` for one record.
QueryPairs record_query(const lang::RelationDecl & relation, const store::Record & record);

}  // namespace logiciot::gateway
