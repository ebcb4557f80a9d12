#include "logiciot/lang/format.hpp"

namespace logiciot::lang
{

namespace
{

// Binding strength, loosest first. Mirrors the parser's descent order.
enum Prec : int { kOr = 1, kAnd, kNot, kCompare, kAdd, kMul, kUnary, kPrimary };

int precedence(const Expr & e)
{
  if (const auto * b = std::get_if<Binary>(&e.node)) {
    switch (b->op) {
      case BinaryOp::Or:
        return kOr;
      case BinaryOp::And:
        return kAnd;
      case BinaryOp::Add:
      case BinaryOp::Sub:
        return kAdd;
      case BinaryOp::Mul:
      case BinaryOp::Div:
        return kMul;
      default:
        return kCompare;
    }
  }
  if (const auto * u = std::get_if<Unary>(&e.node)) return u->op == UnaryOp::Not ? kNot : kUnary;
  return kPrimary;
}

void write(const Expr & e, std::string & out);

void write_at(const Expr & e, int min_prec, std::string & out)
{
  if (precedence(e) < min_prec) {
    out += '(';
    write(e, out);
    out += ')';
  } else {
    write(e, out);
  }
}

void write_literal(const Value & v, std::string & out)
{
  switch (v.type()) {
    case ValueType::Null:
      out += "null";
      break;
    case ValueType::Boolean:
      out += v.as_boolean() ? "true" : "false";
      break;
    case ValueType::Number:
      out += format_number(v.as_number());
      break;
    case ValueType::Text:
      out += quote_text(v.as_text());
      break;
  }
}

void write(const Expr & e, std::string & out)
{
  std::visit(
    [&](const auto & n) {
      using N = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<N, Literal>) {
        write_literal(n.value, out);
      } else if constexpr (std::is_same_v<N, FieldRef>) {
        out += n.relation;
        out += '.';
        out += n.field;
        if (n.offset != 0) out += '[' + std::to_string(n.offset) + ']';
      } else if constexpr (std::is_same_v<N, VarRef>) {
        out += n.name;
      } else if constexpr (std::is_same_v<N, Unary>) {
        if (n.op == UnaryOp::Not) {
          out += "NOT ";
          write_at(*n.operand, kNot, out);
        } else {
          // Always parenthesized: `-5` would read back as a negative literal.
          out += "-(";
          write(*n.operand, out);
          out += ')';
        }
      } else {
        const int p = precedence(e);
        // Left-associative chains; comparisons don't chain at all.
        const int lhs_min = p == kCompare ? kCompare + 1 : p;
        write_at(*n.lhs, lhs_min, out);
        out += ' ';
        out += op_symbol(n.op);
        out += ' ';
        write_at(*n.rhs, p + 1, out);
      }
    },
    e.node);
}

void write_args(const std::vector<Expr> & args, std::string & out)
{
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    write(args[i], out);
  }
  out += ')';
}

void write_names(const std::vector<std::string> & names, std::string & out)
{
  out += '(';
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  out += ')';
}

void write_block(const Block & body, std::string & out)
{
  out += "{\n";
  for (const auto & s : body) {
    out += "  ";
    out += format_statement(s);
    out += '\n';
  }
  out += "}\n";
}

}  // namespace

std::string quote_text(std::string_view s)
{
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += c;
    }
  }
  out += '"';
  return out;
}

std::string format_expression(const Expr & e)
{
  std::string out;
  write(e, out);
  return out;
}

std::string format_statement(const Statement & s)
{
  std::string out;
  std::visit(
    [&](const auto & n) {
      using N = std::decay_t<decltype(n)>;
      if constexpr (std::is_same_v<N, InsertStmt>) {
        out += n.relation;
        write_args(n.args, out);
      } else if constexpr (std::is_same_v<N, TimerStmt>) {
        out += n.action == TimerAction::Start ? "START (" : "STOP (";
        out += n.timer + ")";
      } else if constexpr (std::is_same_v<N, RuleStmt>) {
        switch (n.action) {
          case RuleAction::Activate:
            out += "ACTIVATE (";
            break;
          case RuleAction::Deactivate:
            out += "DEACTIVATE (";
            break;
          case RuleAction::Check:
            out += "CHECK (";
            break;
        }
        out += n.rule + ")";
      } else {
        out += n.mode == CallMode::Sync ? "CALL " : "ACALL ";
        out += n.module + " ";
        write_args(n.args, out);
      }
    },
    s.node);
  return out;
}

std::string format_program(const Program & p)
{
  std::string out;
  for (const auto & r : p.relations) {
    out += "RELATION " + r.name + " ";
    write_names(r.fields, out);
    out += '\n';
  }
  for (const auto & m : p.modules) {
    out += "MODULE " + m.name + " ";
    write_names(m.outputs, out);
    out += '\n';
  }
  for (const auto & m : p.mappings) {
    out += m.kind == MapKind::Relation ? "MAP RELATION " : "MAP MODULE ";
    out += m.name + " : " + quote_text(m.target) + "\n";
  }
  for (const auto & t : p.triggers) {
    out += "TRIGGER (" + t.relation + ") ";
    write_block(t.body, out);
  }
  for (const auto & e : p.endpoints) {
    out += "ENDPOINT " + e.name + " ";
    write_names(e.params, out);
    out += ' ';
    write_block(e.body, out);
  }
  for (const auto & t : p.timers) {
    out += "TIMER " + t.name + " (" + std::to_string(t.interval_ms) + ") ";
    write_block(t.body, out);
  }
  for (const auto & r : p.rules) {
    auto cond = format_expression(r.condition);
    // A leading '-' right after the rule name would lex as subtraction.
    if (!cond.empty() && cond[0] == '-') cond = "(" + cond + ")";
    out += "RULE " + r.name + " " + cond + " ";
    write_block(r.body, out);
  }
  for (const auto & s : p.top_level_statements) {
    out += format_statement(s);
    out += '\n';
  }
  return out;
}

}  // namespace logiciot::lang
