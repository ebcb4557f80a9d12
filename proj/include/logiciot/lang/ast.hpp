#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "logiciot/value.hpp"

namespace logiciot::lang
{

/// Position in source text (1-based). Locations never take part in AST
/// equality: two trees that differ only in where they came from are equal.
struct SourceLoc
{
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc &, const SourceLoc &) noexcept { return true; }
};

/// Owning pointer with value semantics: deep copy, deep comparison.
template <class T>
class Box
{
public:
  Box(T value) : p_(std::make_unique<T>(std::move(value))) {}
  Box(const Box & other) : p_(std::make_unique<T>(*other.p_)) {}
  Box(Box &&) noexcept = default;
  Box & operator=(const Box & other)
  {
    if (this != &other) p_ = std::make_unique<T>(*other.p_);
    return *this;
  }
  Box & operator=(Box &&) noexcept = default;

  T & operator*() { return *p_; }
  const T & operator*() const { return *p_; }
  T * operator->() { return p_.get(); }
  const T * operator->() const { return p_.get(); }

  friend bool operator==(const Box & a, const Box & b) { return *a.p_ == *b.p_; }

private:
  std::unique_ptr<T> p_;
};

enum class UnaryOp { Negate, Not };

enum class BinaryOp {
  Add,
  Sub,
  Mul,
  Div,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  Equal,
  NotEqual,
  And,
  Or,
};

std::string_view op_symbol(BinaryOp op) noexcept;
bool is_comparison(BinaryOp op) noexcept;
bool is_arithmetic(BinaryOp op) noexcept;

struct Expr;

struct Literal
{
  Value value;
  friend bool operator==(const Literal &, const Literal &) = default;
};

/// `R.F` (offset 0) or `R.F[-k]` (offset -k). Field `T` is the timestamp.
struct FieldRef
{
  std::string relation;
  std::string field;
  std::int64_t offset = 0;
  friend bool operator==(const FieldRef &, const FieldRef &) = default;
};

/// Scope-resolved name: an endpoint parameter or a `MODULE.output` binding.
struct VarRef
{
  std::string name;
  friend bool operator==(const VarRef &, const VarRef &) = default;
};

struct Unary
{
  UnaryOp op;
  Box<Expr> operand;
  friend bool operator==(const Unary &, const Unary &) = default;
};

struct Binary
{
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const Binary &, const Binary &) = default;
};

struct Expr
{
  std::variant<Literal, FieldRef, VarRef, Unary, Binary> node;
  SourceLoc loc;
  friend bool operator==(const Expr &, const Expr &) = default;
};

Expr make_literal(Value v);
Expr make_field(std::string relation, std::string field, std::int64_t offset = 0);
Expr make_var(std::string name);
Expr make_unary(UnaryOp op, Expr operand);
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs);

// Statements ("facts").

struct InsertStmt
{
  std::string relation;
  std::vector<Expr> args;
  friend bool operator==(const InsertStmt &, const InsertStmt &) = default;
};

enum class TimerAction { Start, Stop };
struct TimerStmt
{
  TimerAction action;
  std::string timer;
  friend bool operator==(const TimerStmt &, const TimerStmt &) = default;
};

enum class RuleAction { Activate, Deactivate, Check };
struct RuleStmt
{
  RuleAction action;
  std::string rule;
  friend bool operator==(const RuleStmt &, const RuleStmt &) = default;
};

enum class CallMode { Sync, Async };
struct CallStmt
{
  CallMode mode;
  std::string module;
  std::vector<Expr> args;
  friend bool operator==(const CallStmt &, const CallStmt &) = default;
};

struct Statement
{
  std::variant<InsertStmt, TimerStmt, RuleStmt, CallStmt> node;
  SourceLoc loc;
  friend bool operator==(const Statement &, const Statement &) = default;
};

using Block = std::vector<Statement>;

// Declarations.

struct RelationDecl
{
  std::string name;
  std::vector<std::string> fields;
  SourceLoc loc;
  friend bool operator==(const RelationDecl &, const RelationDecl &) = default;

  /// Index of a user field, or -1. `T` is not a user field.
  int field_index(std::string_view field) const noexcept;
};

struct TriggerDecl
{
  std::string relation;
  Block body;
  SourceLoc loc;
  friend bool operator==(const TriggerDecl &, const TriggerDecl &) = default;
};

struct EndpointDecl
{
  std::string name;
  std::vector<std::string> params;
  Block body;
  SourceLoc loc;
  friend bool operator==(const EndpointDecl &, const EndpointDecl &) = default;
};

struct TimerDecl
{
  std::string name;
  std::int64_t interval_ms = 1;
  Block body;
  SourceLoc loc;
  friend bool operator==(const TimerDecl &, const TimerDecl &) = default;
};

struct RuleDecl
{
  std::string name;
  Expr condition;
  Block body;
  SourceLoc loc;
  friend bool operator==(const RuleDecl &, const RuleDecl &) = default;
};

struct ModuleDecl
{
  std::string name;
  std::vector<std::string> outputs;
  SourceLoc loc;
  friend bool operator==(const ModuleDecl &, const ModuleDecl &) = default;
};

enum class MapKind { Relation, Module };
struct MapDecl
{
  MapKind kind;
  std::string name;
  std::string target;
  SourceLoc loc;
  friend bool operator==(const MapDecl &, const MapDecl &) = default;
};

/// A parsed program. Declarations keep source order within each kind.
struct Program
{
  std::vector<RelationDecl> relations;
  std::vector<TriggerDecl> triggers;
  std::vector<EndpointDecl> endpoints;
  std::vector<TimerDecl> timers;
  std::vector<RuleDecl> rules;
  std::vector<ModuleDecl> modules;
  std::vector<MapDecl> mappings;
  std::vector<Statement> top_level_statements;

  friend bool operator==(const Program &, const Program &) = default;

  const RelationDecl * find_relation(std::string_view name) const noexcept;
  const TriggerDecl * find_trigger(std::string_view relation) const noexcept;
  const EndpointDecl * find_endpoint(std::string_view name) const noexcept;
  const TimerDecl * find_timer(std::string_view name) const noexcept;
  const RuleDecl * find_rule(std::string_view name) const noexcept;
  const ModuleDecl * find_module(std::string_view name) const noexcept;
  const MapDecl * find_mapping(MapKind kind, std::string_view name) const noexcept;
};

/// Relations mentioned anywhere in an expression, in first-mention order.
std::vector<std::string> mentioned_relations(const Expr & e);

}  // namespace logiciot::lang
