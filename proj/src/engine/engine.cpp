#include "logiciot/engine/engine.hpp"

#include <algorithm>
#include <spdlog/spdlog.h>

namespace logiciot::engine
{

using lang::Statement;

Engine::Engine(lang::Program program, EngineConfig config, const Clock & clock, Outbound & outbound)
  : program_(std::move(program)), config_(std::move(config)), clock_(clock), outbound_(outbound)
{
  if (config_.max_cascade < 1) throw std::invalid_argument("cascade limit must be positive");
  if (config_.call_timeout_ms < 1) throw std::invalid_argument("call timeout must be positive");
  for (const auto & [rel, url] : config_.webhooks) {
    if (!program_.find_relation(rel)) throw std::invalid_argument("webhook for undeclared relation '" + rel + "'");
  }

  store_ = std::make_unique<store::RelationStore>(program_.relations, config_.store);

  for (const auto & t : program_.triggers) {
    if (!triggers_.emplace(t.relation, &t).second) {
      throw std::invalid_argument("more than one trigger for relation '" + t.relation + "'");
    }
  }

  for (std::size_t i = 0; i < program_.rules.size(); ++i) {
    const auto & r = program_.rules[i];
    RuleState st{&r, true, lang::mentioned_relations(r.condition)};
    for (const auto & rel : st.depends_on) index_[rel].push_back(i);
    rules_.push_back(std::move(st));
  }

  for (const auto & m : program_.mappings) {
    if (m.kind == lang::MapKind::Module) {
      const lang::ModuleDecl * mod = program_.find_module(m.name);
      modules_[m.name] = ModuleBinding{m.name, m.target, mod ? mod->outputs : std::vector<std::string>{},
                                       config_.call_timeout_ms};
    } else {
      relation_backends_[m.name] = m.target;
    }
  }

  if (config_.persist_path) {
    replayed_ = store::replay_log(*config_.persist_path, *store_).records;
    persist_ = std::make_unique<store::PersistenceLog>(*config_.persist_path);
  }

  const Timestamp start = event_time();
  for (const auto & t : program_.timers) timers_.push_back(TimerState{&t, true, start + t.interval_ms});

  if (!program_.top_level_statements.empty()) {
    run_guarded([&] {
      eval::Scope scope;
      run_block(program_.top_level_statements, scope, 0);
    });
  }
}

Engine::~Engine() = default;

std::vector<Firing> Engine::run_guarded(const std::function<void()> & work)
{
  event_firings_.clear();
  try {
    work();
  } catch (const std::exception & e) {
    errors_.emplace_back(e.what());
    spdlog::warn("event aborted: {}", e.what());
  }
  return std::move(event_firings_);
}

std::vector<Firing> Engine::process_event(const Event & event)
{
  return run_guarded([&] {
    std::visit(
      [&](const auto & ev) {
        using E = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<E, ExternalInsert>) {
          if (!store_->has_relation(ev.relation)) throw RuntimeError("insert into unknown relation '" + ev.relation + "'");
          insert_record(ev.relation, ev.values, 0);
        } else if constexpr (std::is_same_v<E, EndpointCall>) {
          const lang::EndpointDecl * ep = program_.find_endpoint(ev.name);
          if (!ep) throw RuntimeError("call to unknown endpoint '" + ev.name + "'");
          if (ev.args.size() != ep->params.size()) {
            throw RuntimeError("endpoint '" + ev.name + "' expects " + std::to_string(ep->params.size()) +
                               " arguments, got " + std::to_string(ev.args.size()));
          }
          eval::Scope scope;
          for (std::size_t i = 0; i < ep->params.size(); ++i) scope.bind(ep->params[i], ev.args[i]);
          run_block(ep->body, scope, 0);
        } else if constexpr (std::is_same_v<E, TimerTick>) {
          tick_timer(timer_index(ev.name));
        }
      },
      event.kind);
  });
}

std::optional<Timestamp> Engine::next_timer_due() const
{
  std::optional<Timestamp> due;
  for (const auto & t : timers_) {
    if (t.running && (!due || t.next_fire < *due)) due = t.next_fire;
  }
  return due;
}

std::vector<Firing> Engine::fire_due_timers()
{
  std::vector<Firing> out;
  while (true) {
    const Timestamp now = clock_.now();
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < timers_.size(); ++i) {
      const auto & t = timers_[i];
      if (!t.running || t.next_fire > now) continue;
      if (!pick || t.next_fire < timers_[*pick].next_fire) pick = i;
    }
    if (!pick) break;
    auto fired = process_event(Event{TimerTick{timers_[*pick].decl->name}, 0});
    out.insert(out.end(), std::make_move_iterator(fired.begin()), std::make_move_iterator(fired.end()));
  }
  return out;
}

void Engine::tick_timer(std::size_t idx)
{
  TimerState & t = timers_[idx];
  if (!t.running) return;
  t.next_fire += t.decl->interval_ms;
  record_firing(FiringKind::Timer, t.decl->name, store_->last_seq());
  eval::Scope scope;
  run_block(t.decl->body, scope, 0);
}

Timestamp Engine::event_time() const { return std::max(clock_.now(), store_->last_timestamp()); }

void Engine::record_firing(FiringKind kind, const std::string & name, store::Seq seq)
{
  Firing f{seq, kind, name, event_time()};
  if (config_.on_firing) config_.on_firing(f);
  if (config_.retain_firing_log) log_.push_back(f);
  event_firings_.push_back(std::move(f));
}

void Engine::insert_record(const std::string & relation, std::vector<Value> values, int depth)
{
  if (depth > config_.max_cascade) {
    throw CascadeLimitExceeded("cascade depth limit " + std::to_string(config_.max_cascade) +
                               " exceeded inserting into '" + relation + "'");
  }
  const lang::RelationDecl & decl = store_->decl(relation);
  if (values.size() != decl.fields.size()) {
    throw RuntimeError("relation '" + relation + "' expects " + std::to_string(decl.fields.size()) +
                       " values, got " + std::to_string(values.size()));
  }
  if (auto backend = relation_backends_.find(relation); backend != relation_backends_.end()) {
    outbound_.forward_insert(backend->second, decl, values, config_.call_timeout_ms);
  }
  const store::Record rec = store_->append(relation, std::move(values), event_time());
  if (persist_) persist_->append(relation, rec);
  if (auto hook = config_.webhooks.find(relation); hook != config_.webhooks.end()) {
    outbound_.fire_webhook(hook->second, decl, rec);
  }
  if (auto trig = triggers_.find(relation); trig != triggers_.end()) {
    record_firing(FiringKind::Trigger, relation, rec.seq);
    eval::Scope scope;
    run_block(trig->second->body, scope, depth);
  }
  propagate(relation, rec.seq, depth);
}

void Engine::propagate(const std::string & relation, store::Seq seq, int depth)
{
  static const eval::Scope empty;
  if (config_.dispatch == RuleDispatch::Indexed) {
    auto it = index_.find(relation);
    if (it == index_.end()) return;
    for (std::size_t idx : it->second) {
      if (!rules_[idx].active) continue;
      ++rule_evaluations_;
      if (eval::evaluate_condition(rules_[idx].decl->condition, *store_, empty) == eval::Condition::True) {
        fire_rule(idx, seq, depth);
      }
    }
    return;
  }
  for (std::size_t idx = 0; idx < rules_.size(); ++idx) {
    if (!rules_[idx].active) continue;
    const lang::Expr & cond = rules_[idx].decl->condition;
    ++rule_evaluations_;
    std::optional<eval::Condition> result;
    std::exception_ptr failure;
    try {
      result = eval::evaluate_condition(cond, *store_, empty);
    } catch (...) {
      failure = std::current_exception();
    }
    const auto mentions = lang::mentioned_relations(cond);
    if (std::find(mentions.begin(), mentions.end(), relation) == mentions.end()) continue;
    if (failure) std::rethrow_exception(failure);
    if (*result == eval::Condition::True) fire_rule(idx, seq, depth);
  }
}

void Engine::fire_rule(std::size_t idx, store::Seq seq, int depth)
{
  record_firing(FiringKind::Rule, rules_[idx].decl->name, seq);
  eval::Scope scope;
  run_block(rules_[idx].decl->body, scope, depth);
}

void Engine::run_block(const lang::Block & block, eval::Scope & scope, int depth)
{
  for (const Statement & s : block) execute(s, scope, depth);
}

std::vector<Value> Engine::evaluate_args(const std::vector<lang::Expr> & args, const eval::Scope & scope)
{
  std::vector<Value> out;
  out.reserve(args.size());
  for (const auto & a : args) out.push_back(eval::evaluate(a, *store_, scope));
  return out;
}

void Engine::execute(const Statement & stmt, eval::Scope & scope, int depth)
{
  std::visit(
    [&](const auto & s) {
      using S = std::decay_t<decltype(s)>;
      if constexpr (std::is_same_v<S, lang::InsertStmt>) {
        insert_record(s.relation, evaluate_args(s.args, scope), depth + 1);
      } else if constexpr (std::is_same_v<S, lang::TimerStmt>) {
        TimerState & t = timers_[timer_index(s.timer)];
        if (s.action == lang::TimerAction::Stop) {
          t.running = false;
        } else if (!t.running) {
          t.running = true;
          t.next_fire = event_time() + t.decl->interval_ms;
        }
      } else if constexpr (std::is_same_v<S, lang::RuleStmt>) {
        const std::size_t idx = rule_index(s.rule);
        switch (s.action) {
          case lang::RuleAction::Activate:
            rules_[idx].active = true;
            break;
          case lang::RuleAction::Deactivate:
            rules_[idx].active = false;
            break;
          case lang::RuleAction::Check: {
            if (depth + 1 > config_.max_cascade) {
              throw CascadeLimitExceeded("cascade depth limit " + std::to_string(config_.max_cascade) +
                                         " exceeded checking rule '" + s.rule + "'");
            }
            static const eval::Scope empty;
            if (eval::evaluate_condition(rules_[idx].decl->condition, *store_, empty) == eval::Condition::True) {
              fire_rule(idx, store_->last_seq(), depth + 1);
            }
            break;
          }
        }
      } else if constexpr (std::is_same_v<S, lang::CallStmt>) {
        auto binding = modules_.find(s.module);
        std::vector<Value> args = evaluate_args(s.args, scope);
        if (s.mode == lang::CallMode::Async) {
          if (binding == modules_.end()) {
            spdlog::warn("ACALL {}: module is not mapped, call dropped", s.module);
            return;
          }
          outbound_.acall_module(binding->second, std::move(args));
          return;
        }
        if (binding == modules_.end()) {
          throw ModuleCallError(CallErrorKind::Unmapped, "module '" + s.module + "' has no MAP target");
        }
        auto outputs = outbound_.call_module(binding->second, args);
        for (auto & [name, value] : outputs) scope.bind(s.module + "." + name, std::move(value));
      }
    },
    stmt.node);
}

std::map<std::string, std::vector<std::string>> Engine::dependency_index() const
{
  std::map<std::string, std::vector<std::string>> out;
  for (const auto & [rel, rules] : index_) {
    for (std::size_t idx : rules) out[rel].push_back(rules_[idx].decl->name);
  }
  return out;
}

std::size_t Engine::rule_index(const std::string & name) const
{
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].decl->name == name) return i;
  }
  throw RuntimeError("unknown rule '" + name + "'");
}

std::size_t Engine::timer_index(const std::string & name) const
{
  for (std::size_t i = 0; i < timers_.size(); ++i) {
    if (timers_[i].decl->name == name) return i;
  }
  throw RuntimeError("unknown timer '" + name + "'");
}

const RuleState & Engine::rule_state(const std::string & name) const { return rules_[rule_index(name)]; }

const TimerState & Engine::timer_state(const std::string & name) const { return timers_[timer_index(name)]; }

void Engine::flush()
{
  if (persist_) persist_->flush();
}

}  // namespace logiciot::engine
