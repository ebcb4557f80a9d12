#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "logiciot/engine/engine.hpp"

namespace logiciot::engine
{

struct InsertAction
{
  std::string relation;
  /// By field name; converted to declared order when run.
  std::vector<std::pair<std::string, Value>> fields;
};

struct EndpointAction
{
  std::string name;
  std::vector<std::pair<std::string, Value>> args;
};

struct AdvanceAction
{
  Timestamp ms = 0;
};

/// One scripted action. The virtual clock first moves to `at` (when given),
/// firing every timer due on the way, then the action runs.
struct ScriptStep
{
  std::optional<Timestamp> at;
  std::variant<InsertAction, EndpointAction, AdvanceAction> action;
};

class ScriptError : public std::runtime_error
{
public:
  ScriptError(std::size_t line, const std::string & what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// JSON Lines, one object per line:
///   {"at": 0, "insert": {"relation": "R", "values": {"MAC": "aa", "RSSI": -87}}}
///   {"at": 10, "endpoint": {"name": "E", "args": {"M": "aa"}}}
///   {"advance": 10000}
/// `values`/`args` may also be arrays in declared order. Blank lines and lines
/// starting with '#' are skipped.
std::vector<ScriptStep> parse_script(std::istream & in);

struct ScriptResult
{
  std::vector<Firing> firings;
  std::vector<std::string> errors;
  store::StoreSnapshot store;
  std::uint64_t rule_evaluations = 0;
};

/// Runs `program` against the steps on a virtual clock starting at 0.
/// Identical inputs give identical results.
ScriptResult run_script(const lang::Program & program, const std::vector<ScriptStep> & steps,
                        EngineConfig config = {}, Outbound * outbound = nullptr);

/// Same run with every active rule evaluated after every insert.
ScriptResult naive_oracle(const lang::Program & program, const std::vector<ScriptStep> & steps,
                          EngineConfig config = {}, Outbound * outbound = nullptr);

/// Moves `clock` to `target`, ticking every timer due at or before it in
/// timestamp order.
void advance_to(Engine & engine, VirtualClock & clock, Timestamp target);

}  // namespace logiciot::engine
