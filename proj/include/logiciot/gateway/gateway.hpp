#pragma once

#include <map>
#include <string>
#include <vector>

#include "logiciot/engine/event_loop.hpp"
#include "logiciot/lang/ast.hpp"
#include "logiciot/store/relation_store.hpp"

namespace logiciot::gateway
{

/// Raw query parameters as received; keys may repeat.
using QueryParams = std::multimap<std::string, std::string>;

struct Response
{
  int status = 200;
  std::string body;

  friend bool operator==(const Response &, const Response &) = default;
};

/// Inbound routes, derived once from the program:
///   GET /rel/{name}/insert?<field>=<value>...   -> 202 {"queued":true,"seq":N}
///   GET /rel/{name}/read?limit=K                -> 200 [{"T":..,<fields>..}, ...]
///   GET /endpoint/{name}?<param>=<value>...      -> 202 {"queued":true,"seq":N}
///   GET /healthz                                 -> 200 {"ok":true}
///
/// Handlers never touch engine state: writes become queued events, reads are
/// store snapshots. `seq` in a 202 body is the event's arrival seq.
class Gateway
{
public:
  Gateway(const lang::Program & program, engine::EventQueue & queue, const store::RelationStore & store);

  Response handle_ingest(const std::string & relation, const QueryParams & params) const;
  Response handle_read(const std::string & relation, const QueryParams & params) const;
  Response handle_endpoint(const std::string & name, const QueryParams & params) const;
  Response handle_health() const;

private:
  std::map<std::string, const lang::RelationDecl *> relations_;
  std::map<std::string, const lang::EndpointDecl *> endpoints_;
  engine::EventQueue & queue_;
  const store::RelationStore & store_;
};

/// JSON array, newest first, keys in fixed order: T, then declared fields.
std::string render_records(const lang::RelationDecl & relation, const std::vector<store::Record> & records);

/// Matches query parameters one-to-one against `names` (each exactly once,
/// nothing extra) and types their values. Returns an error message, or an
/// empty string and fills `out` in `names` order.
std::string bind_params(const std::vector<std::string> & names, const QueryParams & params,
                        std::vector<Value> & out);

}  // namespace logiciot::gateway
