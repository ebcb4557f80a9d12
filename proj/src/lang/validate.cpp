#include <set>
#include <string>

#include "logiciot/lang/parser.hpp"

namespace logiciot::lang
{

namespace
{

enum class StaticType { Any, Null, Number, Boolean, Text };

std::string_view static_name(StaticType t)
{
  switch (t) {
    case StaticType::Any:
      return "any";
    case StaticType::Null:
      return "null";
    case StaticType::Number:
      return "number";
    case StaticType::Boolean:
      return "boolean";
    case StaticType::Text:
      return "text";
  }
  return "?";
}

[[noreturn]] void semantic(SourceLoc loc, std::string msg)
{
  throw ParseError(Diagnostic{DiagnosticKind::Semantic, loc, std::move(msg), {}});
}

template <class Decl, class Name>
void require_unique(const std::vector<Decl> & decls, std::string_view kind, Name name)
{
  std::set<std::string> seen;
  for (const auto & d : decls) {
    if (!seen.insert(name(d)).second) {
      semantic(d.loc, "duplicate " + std::string(kind) + " '" + name(d) + "'");
    }
  }
}

void require_unique_names(const std::vector<std::string> & names, SourceLoc loc, std::string_view what,
                          std::string_view owner)
{
  std::set<std::string> seen;
  for (const auto & n : names) {
    if (!seen.insert(n).second) {
      semantic(loc, "duplicate " + std::string(what) + " '" + n + "' in " + std::string(owner));
    }
  }
}

bool valid_target(std::string_view t)
{
  if (t.empty()) return false;
  for (unsigned char c : t) {
    if (c <= 0x20 || c == 0x7f || c == '"' || c == '<' || c == '>' || c == '\\') return false;
  }
  const auto sep = t.find("://");
  if (sep == std::string_view::npos) return true;  // relative path
  if (sep == 0 || sep + 3 == t.size()) return false;
  const char first = t[0];
  if (!((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z'))) return false;
  for (std::size_t i = 1; i < sep; ++i) {
    const char c = t[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '+' ||
                    c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

class Validator
{
public:
  explicit Validator(Program & p) : p_(p) {}

  void run()
  {
    declarations();
    for (auto & r : p_.rules) {
      resolve(r.condition);
      check_condition(r);
    }
    for (auto & t : p_.triggers) block(t.body, {});
    for (auto & e : p_.endpoints) block(e.body, std::set<std::string>(e.params.begin(), e.params.end()));
    for (auto & t : p_.timers) block(t.body, {});
    for (auto & r : p_.rules) block(r.body, {});
    block(p_.top_level_statements, {});
  }

private:
  void declarations()
  {
    auto by_name = [](const auto & d) { return d.name; };
    require_unique(p_.relations, "relation", by_name);
    require_unique(p_.modules, "module", by_name);
    require_unique(p_.timers, "timer", by_name);
    require_unique(p_.rules, "rule", by_name);
    require_unique(p_.endpoints, "endpoint", by_name);

    for (const auto & r : p_.relations) {
      if (r.fields.empty()) semantic(r.loc, "relation '" + r.name + "' needs at least one field");
      require_unique_names(r.fields, r.loc, "field", "relation '" + r.name + "'");
      for (const auto & f : r.fields) {
        if (f == "T") semantic(r.loc, "relation '" + r.name + "': field name T is reserved for the timestamp");
      }
    }
    for (const auto & m : p_.modules) {
      require_unique_names(m.outputs, m.loc, "output", "module '" + m.name + "'");
      if (p_.find_relation(m.name)) {
        semantic(m.loc, "module '" + m.name + "' has the same name as a relation");
      }
    }
    for (const auto & t : p_.timers) {
      if (t.interval_ms < 1) semantic(t.loc, "timer '" + t.name + "' interval must be >= 1 ms");
    }
    for (const auto & e : p_.endpoints) {
      require_unique_names(e.params, e.loc, "parameter", "endpoint '" + e.name + "'");
      for (const auto & prm : e.params) {
        if (p_.find_relation(prm)) {
          semantic(e.loc, "endpoint '" + e.name + "': parameter '" + prm + "' shadows a relation");
        }
      }
    }
    std::set<std::string> triggered;
    for (const auto & t : p_.triggers) {
      if (!p_.find_relation(t.relation)) semantic(t.loc, "trigger references unknown relation '" + t.relation + "'");
      if (!triggered.insert(t.relation).second) {
        semantic(t.loc, "second trigger for relation '" + t.relation + "' (at most one per relation)");
      }
    }
    std::set<std::pair<MapKind, std::string>> mapped;
    for (const auto & m : p_.mappings) {
      const bool relation = m.kind == MapKind::Relation;
      const bool known = relation ? p_.find_relation(m.name) != nullptr : p_.find_module(m.name) != nullptr;
      if (!known) {
        semantic(m.loc, std::string("MAP references unknown ") + (relation ? "relation" : "module") + " '" + m.name + "'");
      }
      if (!mapped.insert({m.kind, m.name}).second) semantic(m.loc, "'" + m.name + "' is mapped twice");
      if (!valid_target(m.target)) semantic(m.loc, "invalid MAP target '" + m.target + "'");
    }
  }

  /// `M.out` where M is a module is a scope variable, not a field.
  void resolve(Expr & e)
  {
    if (auto * f = std::get_if<FieldRef>(&e.node)) {
      if (!p_.find_relation(f->relation) && p_.find_module(f->relation)) {
        if (f->offset != 0) semantic(e.loc, "module output '" + f->relation + "." + f->field + "' has no history");
        e.node = VarRef{f->relation + "." + f->field};
      }
    } else if (auto * u = std::get_if<Unary>(&e.node)) {
      resolve(*u->operand);
    } else if (auto * b = std::get_if<Binary>(&e.node)) {
      resolve(*b->lhs);
      resolve(*b->rhs);
    }
  }

  StaticType type_of(const Expr & e, const std::set<std::string> * scope)
  {
    return std::visit(
      [&](const auto & n) -> StaticType {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Literal>) {
          switch (n.value.type()) {
            case ValueType::Null:
              return StaticType::Null;
            case ValueType::Number:
              return StaticType::Number;
            case ValueType::Boolean:
              return StaticType::Boolean;
            case ValueType::Text:
              return StaticType::Text;
          }
          return StaticType::Any;
        } else if constexpr (std::is_same_v<N, FieldRef>) {
          const RelationDecl * rel = p_.find_relation(n.relation);
          if (!rel) semantic(e.loc, "unknown relation '" + n.relation + "'");
          if (n.field != "T" && rel->field_index(n.field) < 0) {
            semantic(e.loc, "relation '" + n.relation + "' has no field '" + n.field + "'");
          }
          if (n.offset > 0) semantic(e.loc, "history offset must not be positive");
          return n.field == "T" ? StaticType::Number : StaticType::Any;
        } else if constexpr (std::is_same_v<N, VarRef>) {
          if (!scope) semantic(e.loc, "'" + n.name + "' is not a relation field (conditions have no local scope)");
          if (!scope->count(n.name)) semantic(e.loc, "unbound name '" + n.name + "'");
          return StaticType::Any;
        } else if constexpr (std::is_same_v<N, Unary>) {
          const StaticType t = type_of(*n.operand, scope);
          const StaticType want = n.op == UnaryOp::Not ? StaticType::Boolean : StaticType::Number;
          if (t != StaticType::Any && t != want) {
            semantic(e.loc, std::string(n.op == UnaryOp::Not ? "NOT" : "unary '-'") + " applied to " +
                              std::string(static_name(t)));
          }
          return want;
        } else {
          const StaticType l = type_of(*n.lhs, scope);
          const StaticType r = type_of(*n.rhs, scope);
          auto mismatch = [&] {
            semantic(e.loc, "operator " + std::string(op_symbol(n.op)) + " applied to " + std::string(static_name(l)) +
                              " and " + std::string(static_name(r)));
          };
          if (is_arithmetic(n.op)) {
            if ((l != StaticType::Any && l != StaticType::Number) || (r != StaticType::Any && r != StaticType::Number)) {
              mismatch();
            }
            return StaticType::Number;
          }
          if (n.op == BinaryOp::And || n.op == BinaryOp::Or) {
            if ((l != StaticType::Any && l != StaticType::Boolean) ||
                (r != StaticType::Any && r != StaticType::Boolean)) {
              mismatch();
            }
            return StaticType::Boolean;
          }
          if (n.op != BinaryOp::Equal && n.op != BinaryOp::NotEqual) {
            if (l == StaticType::Null || r == StaticType::Null) mismatch();
            if (l != StaticType::Any && r != StaticType::Any && l != r) mismatch();
          }
          return StaticType::Boolean;
        }
      },
      e.node);
  }

  void check_condition(const RuleDecl & r)
  {
    const StaticType t = type_of(r.condition, nullptr);
    if (t != StaticType::Any && t != StaticType::Boolean) {
      semantic(r.loc, "rule '" + r.name + "' condition is " + std::string(static_name(t)) + ", not boolean");
    }
  }

  void block(Block & body, std::set<std::string> scope)
  {
    for (auto & s : body) {
      if (auto * ins = std::get_if<InsertStmt>(&s.node)) {
        const RelationDecl * rel = p_.find_relation(ins->relation);
        if (!rel) semantic(s.loc, "insert into unknown relation '" + ins->relation + "'");
        if (ins->args.size() != rel->fields.size()) {
          semantic(s.loc, "relation '" + ins->relation + "' expects " + std::to_string(rel->fields.size()) +
                            " values, got " + std::to_string(ins->args.size()));
        }
        for (auto & a : ins->args) {
          resolve(a);
          type_of(a, &scope);
        }
      } else if (auto * tm = std::get_if<TimerStmt>(&s.node)) {
        if (!p_.find_timer(tm->timer)) semantic(s.loc, "unknown timer '" + tm->timer + "'");
      } else if (auto * rs = std::get_if<RuleStmt>(&s.node)) {
        if (!p_.find_rule(rs->rule)) semantic(s.loc, "unknown rule '" + rs->rule + "'");
      } else if (auto * call = std::get_if<CallStmt>(&s.node)) {
        const ModuleDecl * mod = p_.find_module(call->module);
        if (!mod) semantic(s.loc, "call to unknown module '" + call->module + "'");
        for (auto & a : call->args) {
          resolve(a);
          type_of(a, &scope);
        }
        if (call->mode == CallMode::Sync) {
          for (const auto & out : mod->outputs) scope.insert(mod->name + "." + out);
        }
      }
    }
  }

  Program & p_;
};

}  // namespace

void resolve_and_validate(Program & program) { Validator(program).run(); }

}  // namespace logiciot::lang
