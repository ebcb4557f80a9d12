#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "logiciot/lang/ast.hpp"
#include "logiciot/store/relation_store.hpp"

namespace logiciot::eval
{

enum class ErrorKind {
  Type,
  HistoryUnavailable,
  DivisionByZero,
  /// Arithmetic overflowed to infinity.
  NonFinite,
  UnboundName,
};

std::string_view kind_name(ErrorKind k) noexcept;

class EvalError : public std::runtime_error
{
public:
  EvalError(ErrorKind kind, const std::string & what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Local bindings of a block: endpoint parameters and `MODULE.output` values.
class Scope
{
public:
  void bind(std::string name, Value v) { vars_[std::move(name)] = std::move(v); }
  const Value * lookup(const std::string & name) const
  {
    auto it = vars_.find(name);
    return it == vars_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, Value> & bindings() const noexcept { return vars_; }

private:
  std::map<std::string, Value> vars_;
};

/// Operands evaluate left to right; AND/OR short-circuit after checking that
/// the left operand is boolean. No implicit coercions.
Value evaluate(const lang::Expr & expr, const store::RelationStore & store, const Scope & scope);

enum class Condition { True, False, Unavailable };

/// Rule-condition evaluation. Missing history means the rule cannot fire yet
/// and comes back as Unavailable; every other failure still throws.
Condition evaluate_condition(const lang::Expr & expr, const store::RelationStore & store, const Scope & scope);

}  // namespace logiciot::eval
