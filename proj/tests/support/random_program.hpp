#pragma once

#include <random>
#include <vector>

#include "logiciot/engine/script.hpp"
#include "logiciot/lang/ast.hpp"

namespace logiciot::testing
{

struct ProgramShape
{
  int max_relations = 10;
  int max_rules = 20;
  int max_timers = 2;
  int max_endpoints = 2;
  /// Modules, CALL/ACALL, MAP, text escapes, keyword-spelled names, top-level
  /// statements. Off for runs that must not touch the network.
  bool surface_features = false;
  /// Allow CHECK/ACTIVATE/DEACTIVATE/START/STOP inside endpoint and timer
  /// bodies.
  bool control_statements = true;
};

/// A valid, resolved program. Inserts only flow from lower to higher relation
/// tiers, so trigger and rule cascades always terminate quickly.
lang::Program random_program(std::mt19937_64 & rng, const ProgramShape & shape = {});

struct ScriptShape
{
  int max_events = 1000;
  /// Probability that an inserted value is text or boolean instead of a number.
  double odd_value_rate = 0.02;
};

/// Inserts (into every relation), endpoint calls and clock advances, with
/// non-decreasing `at` times.
std::vector<engine::ScriptStep> random_script(std::mt19937_64 & rng, const lang::Program & program,
                                              const ScriptShape & shape = {});

}  // namespace logiciot::testing
