#include "logiciot/engine/script.hpp"

#include <json.hpp>

#include "logiciot/json_value.hpp"

namespace logiciot::engine
{

ScriptError::ScriptError(std::size_t line, const std::string & what)
  : std::runtime_error("script line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace
{

std::vector<std::pair<std::string, Value>> named_values(const nlohmann::json & j, const char * key)
{
  std::vector<std::pair<std::string, Value>> out;
  if (!j.contains(key)) return out;
  const auto & v = j.at(key);
  if (v.is_object()) {
    for (const auto & [name, value] : v.items()) out.emplace_back(name, from_json(value));
  } else if (v.is_array()) {
    // Positional: names are filled in against the declaration when run.
    for (const auto & value : v) out.emplace_back(std::string{}, from_json(value));
  } else {
    throw std::invalid_argument(std::string("'") + key + "' must be an object or array");
  }
  return out;
}

std::vector<Value> in_declared_order(const std::vector<std::string> & declared,
                                     const std::vector<std::pair<std::string, Value>> & given,
                                     const std::string & what)
{
  if (given.size() != declared.size()) {
    throw RuntimeError(what + " expects " + std::to_string(declared.size()) + " values, got " +
                       std::to_string(given.size()));
  }
  const bool positional = !given.empty() && given.front().first.empty();
  if (positional) {
    std::vector<Value> out;
    for (const auto & [name, v] : given) out.push_back(v);
    return out;
  }
  std::vector<Value> out;
  for (const auto & name : declared) {
    auto it = std::find_if(given.begin(), given.end(), [&](const auto & p) { return p.first == name; });
    if (it == given.end()) throw RuntimeError(what + " is missing '" + name + "'");
    out.push_back(it->second);
  }
  return out;
}

ScriptResult run(const lang::Program & program, const std::vector<ScriptStep> & steps, EngineConfig config,
                 Outbound * outbound)
{
  VirtualClock clock(0);
  NullOutbound offline;
  Engine engine(program, std::move(config), clock, outbound ? *outbound : offline);
  ScriptResult result;
  std::uint64_t arrival = 0;

  for (const auto & step : steps) {
    if (step.at) advance_to(engine, clock, *step.at);
    std::visit(
      [&](const auto & a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, AdvanceAction>) {
          advance_to(engine, clock, clock.now() + a.ms);
        } else if constexpr (std::is_same_v<A, InsertAction>) {
          const lang::RelationDecl * rel = program.find_relation(a.relation);
          Event ev{ExternalInsert{a.relation, {}}, ++arrival};
          if (rel) {
            try {
              std::get<ExternalInsert>(ev.kind).values = in_declared_order(rel->fields, a.fields, "relation '" + a.relation + "'");
            } catch (const RuntimeError & e) {
              result.errors.emplace_back(e.what());
              return;
            }
          }
          engine.process_event(ev);
        } else {
          const lang::EndpointDecl * ep = program.find_endpoint(a.name);
          Event ev{EndpointCall{a.name, {}}, ++arrival};
          if (ep) {
            try {
              std::get<EndpointCall>(ev.kind).args = in_declared_order(ep->params, a.args, "endpoint '" + a.name + "'");
            } catch (const RuntimeError & e) {
              result.errors.emplace_back(e.what());
              return;
            }
          }
          engine.process_event(ev);
        }
      },
      step.action);
  }

  result.firings = engine.firing_log();
  result.errors.insert(result.errors.end(), engine.errors().begin(), engine.errors().end());
  result.store = engine.store().snapshot();
  result.rule_evaluations = engine.rule_evaluations();
  return result;
}

}  // namespace

std::vector<ScriptStep> parse_script(std::istream & in)
{
  std::vector<ScriptStep> steps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.is_object()) throw std::invalid_argument("each line must be a JSON object");
      ScriptStep step;
      if (j.contains("at")) {
        if (!j["at"].is_number_integer() || j["at"].get<Timestamp>() < 0) {
          throw std::invalid_argument("'at' must be a non-negative integer");
        }
        step.at = j["at"].get<Timestamp>();
      }
      const int kinds = static_cast<int>(j.contains("insert")) + static_cast<int>(j.contains("endpoint")) +
                        static_cast<int>(j.contains("advance"));
      if (kinds != 1) throw std::invalid_argument("exactly one of insert, endpoint, advance is required");
      if (j.contains("advance")) {
        if (!j["advance"].is_number_integer() || j["advance"].get<Timestamp>() < 0) {
          throw std::invalid_argument("'advance' must be a non-negative integer");
        }
        step.action = AdvanceAction{j["advance"].get<Timestamp>()};
      } else if (j.contains("insert")) {
        const auto & body = j["insert"];
        if (!body.is_object() || !body.contains("relation") || !body["relation"].is_string()) {
          throw std::invalid_argument("'insert' needs a relation name");
        }
        step.action = InsertAction{body["relation"].get<std::string>(), named_values(body, "values")};
      } else {
        const auto & body = j["endpoint"];
        if (!body.is_object() || !body.contains("name") || !body["name"].is_string()) {
          throw std::invalid_argument("'endpoint' needs a name");
        }
        step.action = EndpointAction{body["name"].get<std::string>(), named_values(body, "args")};
      }
      steps.push_back(std::move(step));
    } catch (const std::exception & e) {
      throw ScriptError(lineno, e.what());
    }
  }
  return steps;
}

void advance_to(Engine & engine, VirtualClock & clock, Timestamp target)
{
  while (auto due = engine.next_timer_due()) {
    if (*due > target) break;
    clock.set(*due);
    engine.fire_due_timers();
  }
  clock.set(target);
}

ScriptResult run_script(const lang::Program & program, const std::vector<ScriptStep> & steps, EngineConfig config,
                        Outbound * outbound)
{
  config.dispatch = RuleDispatch::Indexed;
  return run(program, steps, std::move(config), outbound);
}

ScriptResult naive_oracle(const lang::Program & program, const std::vector<ScriptStep> & steps, EngineConfig config,
                          Outbound * outbound)
{
  config.dispatch = RuleDispatch::Naive;
  return run(program, steps, std::move(config), outbound);
}

}  // namespace logiciot::engine
