#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "logiciot/store/relation_store.hpp"
#include "logiciot/value.hpp"

namespace logiciot::engine
{

struct ExternalInsert
{
  std::string relation;
  std::vector<Value> values;
};

/// Arguments in the endpoint's declared parameter order.
struct EndpointCall
{
  std::string name;
  std::vector<Value> args;
};

struct TimerTick
{
  std::string name;
};

struct Shutdown
{
};

using EventKind = std::variant<ExternalInsert, EndpointCall, TimerTick, Shutdown>;

/// One unit of serialized engine work. Events run to completion strictly in
/// arrival_seq order.
struct Event
{
  EventKind kind;
  std::uint64_t arrival_seq = 0;
};

enum class FiringKind { Trigger, Rule, Timer };

std::string_view kind_name(FiringKind k) noexcept;

/// One entry of the firing log. `seq` is the record seq that caused the
/// firing (for CHECK and timer ticks: the last seq stored at that moment).
struct Firing
{
  store::Seq seq = 0;
  FiringKind kind = FiringKind::Rule;
  std::string name;
  store::Timestamp t = 0;

  friend bool operator==(const Firing &, const Firing &) = default;
};

/// {"seq": <int>, "kind": "rule"|"trigger"|"timer", "name": "<name>", "t": <int>}
std::string to_json_line(const Firing & f);

/// Concatenated JSON lines, each newline-terminated.
std::string export_firing_log(const std::vector<Firing> & log);

}  // namespace logiciot::engine
