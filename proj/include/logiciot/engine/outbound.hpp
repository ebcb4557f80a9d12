#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "logiciot/lang/ast.hpp"
#include "logiciot/store/relation_store.hpp"
#include "logiciot/value.hpp"

namespace logiciot::engine
{

/// A mapped module as seen by the runtime.
struct ModuleBinding
{
  std::string name;
  /// MAP target, absolute URL or a path relative to the module base URL.
  std::string target;
  std::vector<std::string> outputs;
  int timeout_ms = 5000;
};

enum class CallErrorKind {
  Unmapped,
  Timeout,
  /// Connection refused, reset, DNS failure and similar.
  Transport,
  HttpStatus,
  MalformedBody,
  MissingOutput,
};

std::string_view kind_name(CallErrorKind k) noexcept;

class ModuleCallError : public std::runtime_error
{
public:
  ModuleCallError(CallErrorKind kind, const std::string & what) : std::runtime_error(what), kind_(kind) {}
  CallErrorKind kind() const noexcept { return kind_; }

private:
  CallErrorKind kind_;
};

/// Everything the engine sends to the outside world.
class Outbound
{
public:
  virtual ~Outbound() = default;

  /// Blocking call; returns exactly the declared outputs or throws
  /// ModuleCallError.
  virtual std::map<std::string, Value> call_module(const ModuleBinding & binding, const std::vector<Value> & args) = 0;

  /// Fire-and-forget call; never throws for delivery failures.
  virtual void acall_module(const ModuleBinding & binding, std::vector<Value> args) = 0;

  /// Forward an insert to a remote relation backend before it is applied
  /// locally. Throws ModuleCallError unless the backend answered 2xx.
  virtual void forward_insert(const std::string & target, const lang::RelationDecl & relation,
                              const std::vector<Value> & values, int timeout_ms) = 0;

  /// Background per-record notification; never throws for delivery failures.
  virtual void fire_webhook(const std::string & url, const lang::RelationDecl & relation,
                            const store::Record & record) = 0;
};

/// Outbound for runs with no network: synchronous calls and forwards fail
/// with Transport, background traffic is dropped.
class NullOutbound final : public Outbound
{
public:
  std::map<std::string, Value> call_module(const ModuleBinding & binding, const std::vector<Value> & args) override;
  void acall_module(const ModuleBinding &, std::vector<Value>) override {}
  void forward_insert(const std::string & target, const lang::RelationDecl & relation,
                      const std::vector<Value> & values, int timeout_ms) override;
  void fire_webhook(const std::string &, const lang::RelationDecl &, const store::Record &) override {}
};

}  // namespace logiciot::engine
