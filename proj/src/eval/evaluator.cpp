#include "logiciot/eval/evaluator.hpp"

#include <cmath>

namespace logiciot::eval
{

using lang::Binary;
using lang::BinaryOp;
using lang::Expr;
using lang::UnaryOp;

std::string_view kind_name(ErrorKind k) noexcept
{
  switch (k) {
    case ErrorKind::Type:
      return "TypeError";
    case ErrorKind::HistoryUnavailable:
      return "HistoryUnavailable";
    case ErrorKind::DivisionByZero:
      return "DivisionByZero";
    case ErrorKind::NonFinite:
      return "NonFinite";
    case ErrorKind::UnboundName:
      return "UnboundName";
  }
  return "?";
}

namespace
{

[[noreturn]] void type_error(std::string_view op, const Value & a)
{
  throw EvalError(ErrorKind::Type, std::string(op) + " not defined on " + std::string(type_name(a.type())));
}

[[noreturn]] void type_error(std::string_view op, const Value & a, const Value & b)
{
  throw EvalError(ErrorKind::Type, std::string(op) + " not defined on " + std::string(type_name(a.type())) +
                                     " and " + std::string(type_name(b.type())));
}

Value checked_number(double d)
{
  if (!std::isfinite(d)) throw EvalError(ErrorKind::NonFinite, "arithmetic result is not finite");
  return Value::number(d);
}

/// -1, 0, 1 for ordered operands of one type.
int order(BinaryOp op, const Value & a, const Value & b)
{
  if (a.type() != b.type() || a.is_null()) type_error(lang::op_symbol(op), a, b);
  if (a.is_number()) return a.as_number() < b.as_number() ? -1 : (b.as_number() < a.as_number() ? 1 : 0);
  if (a.is_boolean()) return static_cast<int>(a.as_boolean()) - static_cast<int>(b.as_boolean());
  const int c = a.as_text().compare(b.as_text());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

class Evaluator
{
public:
  Evaluator(const store::RelationStore & store, const Scope & scope) : store_(store), scope_(scope) {}

  Value eval(const Expr & e)
  {
    return std::visit([&](const auto & n) { return node(n); }, e.node);
  }

private:
  Value node(const lang::Literal & n) { return n.value; }

  Value node(const lang::FieldRef & n)
  {
    try {
      return store_.latest(n.relation, n.field, n.offset);
    } catch (const store::HistoryUnavailable & h) {
      throw EvalError(ErrorKind::HistoryUnavailable, h.what());
    }
  }

  Value node(const lang::VarRef & n)
  {
    if (const Value * v = scope_.lookup(n.name)) return *v;
    throw EvalError(ErrorKind::UnboundName, "unbound name '" + n.name + "'");
  }

  Value node(const lang::Unary & n)
  {
    const Value v = eval(*n.operand);
    if (n.op == UnaryOp::Not) {
      if (!v.is_boolean()) type_error("NOT", v);
      return Value::boolean(!v.as_boolean());
    }
    if (!v.is_number()) type_error("unary -", v);
    return Value::number(-v.as_number());
  }

  Value node(const Binary & n)
  {
    if (n.op == BinaryOp::And || n.op == BinaryOp::Or) return logical(n);
    const Value a = eval(*n.lhs);
    const Value b = eval(*n.rhs);
    const auto sym = lang::op_symbol(n.op);
    switch (n.op) {
      case BinaryOp::Equal:
        return Value::boolean(a == b);
      case BinaryOp::NotEqual:
        return Value::boolean(!(a == b));
      case BinaryOp::Less:
        return Value::boolean(order(n.op, a, b) < 0);
      case BinaryOp::LessEq:
        return Value::boolean(order(n.op, a, b) <= 0);
      case BinaryOp::Greater:
        return Value::boolean(order(n.op, a, b) > 0);
      case BinaryOp::GreaterEq:
        return Value::boolean(order(n.op, a, b) >= 0);
      default:
        break;
    }
    if (!a.is_number() || !b.is_number()) type_error(sym, a, b);
    const double x = a.as_number();
    const double y = b.as_number();
    switch (n.op) {
      case BinaryOp::Add:
        return checked_number(x + y);
      case BinaryOp::Sub:
        return checked_number(x - y);
      case BinaryOp::Mul:
        return checked_number(x * y);
      case BinaryOp::Div:
        if (y == 0) throw EvalError(ErrorKind::DivisionByZero, "division by zero");
        return checked_number(x / y);
      default:
        break;
    }
    throw std::logic_error("unhandled binary operator");
  }

  Value logical(const Binary & n)
  {
    const auto sym = lang::op_symbol(n.op);
    const Value a = eval(*n.lhs);
    if (!a.is_boolean()) type_error(sym, a);
    if (n.op == BinaryOp::And && !a.as_boolean()) return a;
    if (n.op == BinaryOp::Or && a.as_boolean()) return a;
    const Value b = eval(*n.rhs);
    if (!b.is_boolean()) type_error(sym, b);
    return b;
  }

  const store::RelationStore & store_;
  const Scope & scope_;
};

}  // namespace

Value evaluate(const Expr & expr, const store::RelationStore & store, const Scope & scope)
{
  return Evaluator(store, scope).eval(expr);
}

Condition evaluate_condition(const Expr & expr, const store::RelationStore & store, const Scope & scope)
{
  Value v;
  try {
    v = evaluate(expr, store, scope);
  } catch (const EvalError & e) {
    if (e.kind() == ErrorKind::HistoryUnavailable) return Condition::Unavailable;
    throw;
  }
  if (!v.is_boolean()) {
    throw EvalError(ErrorKind::Type, "condition evaluated to " + std::string(type_name(v.type())) + ", not boolean");
  }
  return v.as_boolean() ? Condition::True : Condition::False;
}

}  // namespace logiciot::eval
