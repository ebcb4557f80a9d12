#include "logiciot/lang/ast.hpp"

#include <algorithm>

namespace logiciot::lang
{

std::string_view op_symbol(BinaryOp op) noexcept
{
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Mul:
      return "*";
    case BinaryOp::Div:
      return "/";
    case BinaryOp::Less:
      return "<";
    case BinaryOp::LessEq:
      return "<=";
    case BinaryOp::Greater:
      return ">";
    case BinaryOp::GreaterEq:
      return ">=";
    case BinaryOp::Equal:
      return "==";
    case BinaryOp::NotEqual:
      return "!=";
    case BinaryOp::And:
      return "AND";
    case BinaryOp::Or:
      return "OR";
  }
  return "?";
}

bool is_comparison(BinaryOp op) noexcept
{
  switch (op) {
    case BinaryOp::Less:
    case BinaryOp::LessEq:
    case BinaryOp::Greater:
    case BinaryOp::GreaterEq:
    case BinaryOp::Equal:
    case BinaryOp::NotEqual:
      return true;
    default:
      return false;
  }
}

bool is_arithmetic(BinaryOp op) noexcept
{
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul || op == BinaryOp::Div;
}

Expr make_literal(Value v) { return Expr{Literal{std::move(v)}, {}}; }

Expr make_field(std::string relation, std::string field, std::int64_t offset)
{
  return Expr{FieldRef{std::move(relation), std::move(field), offset}, {}};
}

Expr make_var(std::string name) { return Expr{VarRef{std::move(name)}, {}}; }

Expr make_unary(UnaryOp op, Expr operand) { return Expr{Unary{op, std::move(operand)}, {}}; }

Expr make_binary(BinaryOp op, Expr lhs, Expr rhs)
{
  return Expr{Binary{op, std::move(lhs), std::move(rhs)}, {}};
}

int RelationDecl::field_index(std::string_view field) const noexcept
{
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i] == field) return static_cast<int>(i);
  }
  return -1;
}

namespace
{
template <class Decl, class Key>
const Decl * find_by(const std::vector<Decl> & decls, std::string_view name, Key key) noexcept
{
  auto it = std::find_if(decls.begin(), decls.end(), [&](const Decl & d) { return key(d) == name; });
  return it == decls.end() ? nullptr : &*it;
}

void collect_relations(const Expr & e, std::vector<std::string> & out)
{
  std::visit(
    [&](const auto & n) {
      using N = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<N, FieldRef>) {
        if (std::find(out.begin(), out.end(), n.relation) == out.end()) out.push_back(n.relation);
      } else if constexpr (std::is_same_v<N, Unary>) {
        collect_relations(*n.operand, out);
      } else if constexpr (std::is_same_v<N, Binary>) {
        collect_relations(*n.lhs, out);
        collect_relations(*n.rhs, out);
      }
    },
    e.node);
}
}  // namespace

const RelationDecl * Program::find_relation(std::string_view name) const noexcept
{
  return find_by(relations, name, [](const RelationDecl & d) -> const std::string & { return d.name; });
}

const TriggerDecl * Program::find_trigger(std::string_view relation) const noexcept
{
  return find_by(triggers, relation, [](const TriggerDecl & d) -> const std::string & { return d.relation; });
}

const EndpointDecl * Program::find_endpoint(std::string_view name) const noexcept
{
  return find_by(endpoints, name, [](const EndpointDecl & d) -> const std::string & { return d.name; });
}

const TimerDecl * Program::find_timer(std::string_view name) const noexcept
{
  return find_by(timers, name, [](const TimerDecl & d) -> const std::string & { return d.name; });
}

const RuleDecl * Program::find_rule(std::string_view name) const noexcept
{
  return find_by(rules, name, [](const RuleDecl & d) -> const std::string & { return d.name; });
}

const ModuleDecl * Program::find_module(std::string_view name) const noexcept
{
  return find_by(modules, name, [](const ModuleDecl & d) -> const std::string & { return d.name; });
}

const MapDecl * Program::find_mapping(MapKind kind, std::string_view name) const noexcept
{
  for (const auto & m : mappings) {
    if (m.kind == kind && m.name == name) return &m;
  }
  return nullptr;
}

std::vector<std::string> mentioned_relations(const Expr & e)
{
  std::vector<std::string> out;
  collect_relations(e, out);
  return out;
}

}  // namespace logiciot::lang
