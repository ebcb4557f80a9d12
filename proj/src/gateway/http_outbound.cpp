#include "logiciot/gateway/http_outbound.hpp"

#include <chrono>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "logiciot/json_value.hpp"

namespace logiciot::gateway
{

using engine::CallErrorKind;
using engine::ModuleCallError;

std::string with_query(std::string_view url, const QueryPairs & pairs)
{
  std::string out(url);
  char sep = out.find('?') == std::string::npos ? '?' : '&';
  for (const auto & [k, v] : pairs) {
    out += sep;
    out += httplib::detail::encode_query_param(k);
    out += '=';
    out += httplib::detail::encode_query_param(v);
    sep = '&';
  }
  return out;
}

QueryPairs module_call_query(const std::vector<Value> & args)
{
  QueryPairs q;
  q.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) q.emplace_back("p" + std::to_string(i + 1), args[i].to_display());
  return q;
}

QueryPairs record_query(const lang::RelationDecl & relation, const store::Record & record)
{
  QueryPairs q;
  q.emplace_back("T", std::to_string(record.t));
  for (std::size_t i = 0; i < relation.fields.size() && i < record.values.size(); ++i) {
    q.emplace_back(relation.fields[i], record.values[i].to_display());
  }
  return q;
}

HttpReply http_get(const std::string & url, int timeout_ms, std::size_t max_body_bytes)
{
  Url parsed;
  try {
    parsed = parse_url(url);
  } catch (const std::invalid_argument & e) {
    throw ModuleCallError(CallErrorKind::Transport, e.what());
  }

  httplib::Client client(parsed.origin());
  const auto timeout = std::chrono::milliseconds(timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  HttpReply reply;
  bool too_large = false;
  const auto started = std::chrono::steady_clock::now();
  auto res = client.Get(parsed.path_and_query, [&](const char * data, std::size_t n) {
    if (reply.body.size() + n > max_body_bytes) {
      too_large = true;
      return false;
    }
    reply.body.append(data, n);
    return true;
  });
  if (!res) {
    if (too_large) {
      throw ModuleCallError(CallErrorKind::MalformedBody,
                            "response from " + url + " exceeds " + std::to_string(max_body_bytes) + " bytes");
    }
    const auto err = res.error();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    if (err == httplib::Error::ConnectionTimeout || elapsed >= timeout) {
      throw ModuleCallError(CallErrorKind::Timeout,
                            "GET " + url + " timed out after " + std::to_string(timeout_ms) + " ms");
    }
    throw ModuleCallError(CallErrorKind::Transport, "GET " + url + " failed: " + httplib::to_string(err));
  }
  reply.status = res->status;
  return reply;
}

HttpOutbound::HttpOutbound(OutboundConfig config)
  : config_(std::move(config)),
    pool_(std::make_unique<httplib::ThreadPool>(std::max<std::size_t>(1, config_.workers), config_.queue_capacity))
{
}

HttpOutbound::~HttpOutbound() { pool_->shutdown(); }

std::map<std::string, Value> HttpOutbound::call_module(const engine::ModuleBinding & binding,
                                                       const std::vector<Value> & args)
{
  std::string url;
  try {
    url = resolve_target(config_.module_base, binding.target);
  } catch (const std::invalid_argument & e) {
    throw ModuleCallError(CallErrorKind::Transport, e.what());
  }
  url = with_query(url, module_call_query(args));

  const auto reply = http_get(url, binding.timeout_ms, config_.max_body_bytes);
  if (reply.status != 200) {
    throw ModuleCallError(CallErrorKind::HttpStatus,
                          "module " + binding.name + " answered HTTP " + std::to_string(reply.status));
  }
  std::map<std::string, Value> outputs;
  if (binding.outputs.empty()) return outputs;

  auto body = nlohmann::json::parse(reply.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw ModuleCallError(CallErrorKind::MalformedBody, "module " + binding.name + " did not return a JSON object");
  }
  for (const auto & name : binding.outputs) {
    auto it = body.find(name);
    if (it == body.end()) {
      throw ModuleCallError(CallErrorKind::MissingOutput, "module " + binding.name + " response lacks '" + name + "'");
    }
    try {
      outputs.emplace(name, from_json(*it));
    } catch (const std::invalid_argument & e) {
      throw ModuleCallError(CallErrorKind::MalformedBody,
                            "module " + binding.name + " output '" + name + "': " + e.what());
    }
  }
  return outputs;
}

void HttpOutbound::acall_module(const engine::ModuleBinding & binding, std::vector<Value> args)
{
  std::string url;
  try {
    url = resolve_target(config_.module_base, binding.target);
  } catch (const std::invalid_argument & e) {
    spdlog::warn("ACALL {}: {}", binding.name, e.what());
    failed_.fetch_add(1);
    return;
  }
  submit(with_query(url, module_call_query(args)));
}

void HttpOutbound::forward_insert(const std::string & target, const lang::RelationDecl & relation,
                                  const std::vector<Value> & values, int timeout_ms)
{
  std::string url;
  try {
    url = resolve_target(config_.module_base, target);
  } catch (const std::invalid_argument & e) {
    throw ModuleCallError(CallErrorKind::Transport, e.what());
  }
  while (!url.empty() && url.back() == '/') url.pop_back();
  QueryPairs q;
  for (std::size_t i = 0; i < relation.fields.size() && i < values.size(); ++i) {
    q.emplace_back(relation.fields[i], values[i].to_display());
  }
  const auto reply = http_get(with_query(url + "/insert", q), timeout_ms, config_.max_body_bytes);
  if (reply.status < 200 || reply.status >= 300) {
    throw ModuleCallError(CallErrorKind::HttpStatus,
                          "backend for " + relation.name + " answered HTTP " + std::to_string(reply.status));
  }
}

void HttpOutbound::fire_webhook(const std::string & url, const lang::RelationDecl & relation,
                                const store::Record & record)
{
  submit(with_query(url, record_query(relation, record)));
}

void HttpOutbound::submit(std::string url)
{
  {
    std::lock_guard lock(mu_);
    ++in_flight_;
  }
  auto job = [this, url] {
    try {
      const auto reply = http_get(url, config_.background_timeout_ms, config_.max_body_bytes);
      if (reply.status >= 200 && reply.status < 300) {
        delivered_.fetch_add(1);
      } else {
        spdlog::warn("background GET {} answered HTTP {}", url, reply.status);
        failed_.fetch_add(1);
      }
    } catch (const std::exception & e) {
      spdlog::warn("background GET failed: {}", e.what());
      failed_.fetch_add(1);
    }
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    idle_.notify_all();
  };
  if (!pool_->enqueue(job)) {
    spdlog::warn("delivery queue full, dropping GET {}", url);
    failed_.fetch_add(1);
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    idle_.notify_all();
  }
}

void HttpOutbound::drain()
{
  std::unique_lock lock(mu_);
  idle_.wait(lock, [&] { return in_flight_ == 0; });
}

}  // namespace logiciot::gateway
