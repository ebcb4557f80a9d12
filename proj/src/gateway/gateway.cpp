#include "logiciot/gateway/gateway.hpp"

#include <charconv>

#include "logiciot/json_value.hpp"

namespace logiciot::gateway
{

namespace
{

Response error(int status, const std::string & message)
{
  ordered_json body;
  body["error"] = message;
  return {status, body.dump()};
}

Response queued(std::uint64_t seq)
{
  ordered_json body;
  body["queued"] = true;
  body["seq"] = seq;
  return {202, body.dump()};
}

}  // namespace

std::string bind_params(const std::vector<std::string> & names, const QueryParams & params, std::vector<Value> & out)
{
  out.clear();
  out.reserve(names.size());
  for (const auto & name : names) {
    const auto n = params.count(name);
    if (n == 0) return "missing parameter '" + name + "'";
    if (n > 1) return "duplicate parameter '" + name + "'";
    out.push_back(parse_query_value(params.find(name)->second));
  }
  for (const auto & [key, value] : params) {
    if (std::find(names.begin(), names.end(), key) == names.end()) return "unexpected parameter '" + key + "'";
  }
  return {};
}

std::string render_records(const lang::RelationDecl & relation, const std::vector<store::Record> & records)
{
  auto array = ordered_json::array();
  for (const auto & rec : records) {
    ordered_json obj;
    obj["T"] = rec.t;
    for (std::size_t i = 0; i < relation.fields.size(); ++i) obj[relation.fields[i]] = to_json(rec.values.at(i));
    array.push_back(std::move(obj));
  }
  return array.dump();
}

Gateway::Gateway(const lang::Program & program, engine::EventQueue & queue, const store::RelationStore & store)
  : queue_(queue), store_(store)
{
  for (const auto & r : program.relations) relations_.emplace(r.name, &r);
  for (const auto & e : program.endpoints) endpoints_.emplace(e.name, &e);
}

Response Gateway::handle_ingest(const std::string & relation, const QueryParams & params) const
{
  auto it = relations_.find(relation);
  if (it == relations_.end()) return error(404, "unknown relation '" + relation + "'");
  std::vector<Value> values;
  if (auto msg = bind_params(it->second->fields, params, values); !msg.empty()) return error(400, msg);
  auto seq = queue_.try_push(engine::ExternalInsert{relation, std::move(values)});
  if (!seq) return error(503, "event queue is full");
  return queued(*seq);
}

Response Gateway::handle_read(const std::string & relation, const QueryParams & params) const
{
  auto it = relations_.find(relation);
  if (it == relations_.end()) return error(404, "unknown relation '" + relation + "'");

  std::size_t limit = 1;
  if (params.count("limit") > 1) return error(400, "duplicate parameter 'limit'");
  for (const auto & [key, value] : params) {
    if (key != "limit") return error(400, "unexpected parameter '" + key + "'");
    long long n = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc{} || end != value.data() + value.size() || n <= 0) {
      return error(400, "limit must be a positive integer");
    }
    limit = static_cast<std::size_t>(n);
  }
  limit = std::min(limit, store_.capacity(relation));
  return {200, render_records(*it->second, store_.read(relation, limit))};
}

Response Gateway::handle_endpoint(const std::string & name, const QueryParams & params) const
{
  auto it = endpoints_.find(name);
  if (it == endpoints_.end()) return error(404, "unknown endpoint '" + name + "'");
  std::vector<Value> args;
  if (auto msg = bind_params(it->second->params, params, args); !msg.empty()) return error(400, msg);
  auto seq = queue_.try_push(engine::EndpointCall{name, std::move(args)});
  if (!seq) return error(503, "event queue is full");
  return queued(*seq);
}

Response Gateway::handle_health() const { return {200, R"({"ok":true})"}; }

}  // namespace logiciot::gateway
