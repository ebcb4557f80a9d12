#include <chrono>

#include "logiciot/engine/clock.hpp"
#include "logiciot/engine/event.hpp"
#include "logiciot/engine/outbound.hpp"
#include "logiciot/json_value.hpp"

namespace logiciot::engine
{

Timestamp WallClock::now() const
{
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void VirtualClock::set(Timestamp t)
{
  Timestamp cur = now_.load();
  while (t > cur && !now_.compare_exchange_weak(cur, t)) {
  }
}

std::string_view kind_name(FiringKind k) noexcept
{
  switch (k) {
    case FiringKind::Trigger:
      return "trigger";
    case FiringKind::Rule:
      return "rule";
    case FiringKind::Timer:
      return "timer";
  }
  return "?";
}

std::string to_json_line(const Firing & f)
{
  ordered_json j;
  j["seq"] = f.seq;
  j["kind"] = kind_name(f.kind);
  j["name"] = f.name;
  j["t"] = f.t;
  return j.dump();
}

std::string export_firing_log(const std::vector<Firing> & log)
{
  std::string out;
  for (const auto & f : log) {
    out += to_json_line(f);
    out += '\n';
  }
  return out;
}

std::string_view kind_name(CallErrorKind k) noexcept
{
  switch (k) {
    case CallErrorKind::Unmapped:
      return "unmapped";
    case CallErrorKind::Timeout:
      return "timeout";
    case CallErrorKind::Transport:
      return "transport";
    case CallErrorKind::HttpStatus:
      return "http-status";
    case CallErrorKind::MalformedBody:
      return "malformed-body";
    case CallErrorKind::MissingOutput:
      return "missing-output";
  }
  return "?";
}

std::map<std::string, Value> NullOutbound::call_module(const ModuleBinding & binding, const std::vector<Value> &)
{
  throw ModuleCallError(CallErrorKind::Transport, "no outbound transport for module '" + binding.name + "'");
}

void NullOutbound::forward_insert(const std::string & target, const lang::RelationDecl & relation,
                                  const std::vector<Value> &, int)
{
  throw ModuleCallError(CallErrorKind::Transport,
                        "no outbound transport to forward '" + relation.name + "' inserts to " + target);
}

}  // namespace logiciot::engine
