#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logiciot/engine/clock.hpp"
#include "logiciot/engine/event.hpp"
#include "logiciot/engine/outbound.hpp"
#include "logiciot/eval/evaluator.hpp"
#include "logiciot/lang/ast.hpp"
#include "logiciot/store/persistence.hpp"
#include "logiciot/store/relation_store.hpp"

namespace logiciot::engine
{

/// How inserts reach rules.
enum class RuleDispatch {
  /// Only rules whose condition mentions the inserted relation are evaluated
  /// (the relation -> rules alpha index).
  Indexed,
  /// Every active rule is evaluated after every insert; relevance is decided
  /// afterwards by walking the condition. Test oracle for Indexed.
  Naive,
};

struct EngineConfig
{
  store::StoreConfig store;
  int max_cascade = 64;
  /// Replayed at load, then appended to.
  std::optional<std::filesystem::path> persist_path;
  /// relation -> webhook URL, hit once per inserted record.
  std::map<std::string, std::string> webhooks;
  int call_timeout_ms = 5000;
  RuleDispatch dispatch = RuleDispatch::Indexed;
  /// Keep every firing in memory (firing_log()). Long-running servers turn
  /// this off and use on_firing instead.
  bool retain_firing_log = true;
  std::function<void(const Firing &)> on_firing;
};

class CascadeLimitExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Bad event payload, unknown name or unmapped module at run time.
class RuntimeError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct RuleState
{
  const lang::RuleDecl * decl = nullptr;
  bool active = true;
  std::vector<std::string> depends_on;
};

struct TimerState
{
  const lang::TimerDecl * decl = nullptr;
  bool running = true;
  Timestamp next_fire = 0;
};

/// Single-threaded rule engine. All mutation happens through process_event
/// and the timer entry points, which the event loop calls from one thread.
///
/// Within an insert the relation's trigger body runs to completion before any
/// rule is evaluated; dependent rules are then evaluated in declaration order
/// and fire immediately when their condition holds. Runtime errors abort the
/// rest of the current event but keep effects already applied.
class Engine
{
public:
  /// Registers relations, builds the dependency index, replays the
  /// persistence log (firing nothing), starts every timer at
  /// now + interval, and runs the top-level statements once.
  Engine(lang::Program program, EngineConfig config, const Clock & clock, Outbound & outbound);
  ~Engine();

  Engine(const Engine &) = delete;
  Engine & operator=(const Engine &) = delete;

  /// Firings produced by this event.
  std::vector<Firing> process_event(const Event & event);

  /// Earliest next_fire among running timers.
  std::optional<Timestamp> next_timer_due() const;

  /// Ticks every timer due at or before the clock's current time, earliest
  /// first, declaration order on ties.
  std::vector<Firing> fire_due_timers();

  const lang::Program & program() const noexcept { return program_; }
  const store::RelationStore & store() const noexcept { return *store_; }
  const std::vector<Firing> & firing_log() const noexcept { return log_; }
  const std::vector<std::string> & errors() const noexcept { return errors_; }

  /// relation -> rule names in declaration order.
  std::map<std::string, std::vector<std::string>> dependency_index() const;

  const RuleState & rule_state(const std::string & name) const;
  const TimerState & timer_state(const std::string & name) const;

  /// Rule-condition evaluations performed by insert propagation.
  std::uint64_t rule_evaluations() const noexcept { return rule_evaluations_; }
  std::size_t replayed_records() const noexcept { return replayed_; }

  void flush();

private:
  std::vector<Firing> run_guarded(const std::function<void()> & work);
  void insert_record(const std::string & relation, std::vector<Value> values, int depth);
  void propagate(const std::string & relation, store::Seq seq, int depth);
  void fire_rule(std::size_t rule_index, store::Seq seq, int depth);
  void tick_timer(std::size_t timer_index);
  void run_block(const lang::Block & block, eval::Scope & scope, int depth);
  void execute(const lang::Statement & stmt, eval::Scope & scope, int depth);
  std::vector<Value> evaluate_args(const std::vector<lang::Expr> & args, const eval::Scope & scope);
  void record_firing(FiringKind kind, const std::string & name, store::Seq seq);
  Timestamp event_time() const;

  std::size_t rule_index(const std::string & name) const;
  std::size_t timer_index(const std::string & name) const;

  lang::Program program_;
  EngineConfig config_;
  const Clock & clock_;
  Outbound & outbound_;

  std::unique_ptr<store::RelationStore> store_;
  std::unique_ptr<store::PersistenceLog> persist_;

  std::vector<RuleState> rules_;
  std::vector<TimerState> timers_;
  std::map<std::string, std::vector<std::size_t>> index_;
  std::map<std::string, const lang::TriggerDecl *> triggers_;
  std::map<std::string, ModuleBinding> modules_;
  std::map<std::string, std::string> relation_backends_;

  std::vector<Firing> log_;
  std::vector<Firing> event_firings_;
  std::vector<std::string> errors_;
  std::uint64_t rule_evaluations_ = 0;
  std::size_t replayed_ = 0;
};

}  // namespace logiciot::engine
