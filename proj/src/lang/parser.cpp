#include "logiciot/lang/parser.hpp"

#include <cmath>

#include "logiciot/lang/lexer.hpp"

namespace logiciot::lang
{

namespace
{

class Parser
{
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens))
  {
    SourceLoc end{1, 1};
    if (!tokens_.empty()) {
      end = tokens_.back().loc;
      end.column += static_cast<int>(tokens_.back().text.size());
    }
    tokens_.push_back(Token{TokenKind::Eof, "", 0, end});
  }

  Program program()
  {
    Program p;
    while (true) {
      skip_separators();
      if (at(TokenKind::Eof)) break;
      item(p);
      if (!at(TokenKind::Eof) && !at(TokenKind::Newline) && !at(TokenKind::Semicolon)) {
        syntax_error("unexpected " + std::string(describe(cur().kind)) + " after declaration",
                     {"newline", "';'"});
      }
    }
    return p;
  }

  Expr standalone_expression()
  {
    skip_newlines();
    Expr e = expression();
    skip_separators();
    if (!at(TokenKind::Eof)) {
      syntax_error("unexpected " + std::string(describe(cur().kind)) + " after expression",
                   {"operator", "end of input"});
    }
    return e;
  }

private:
  const Token & cur() const { return tokens_[idx_]; }
  const Token & peek(std::size_t ahead = 1) const
  {
    return tokens_[std::min(idx_ + ahead, tokens_.size() - 1)];
  }
  bool at(TokenKind k) const { return cur().kind == k; }

  const Token & advance()
  {
    const Token & t = tokens_[idx_];
    if (t.kind != TokenKind::Eof) ++idx_;
    return t;
  }

  bool match(TokenKind k)
  {
    if (!at(k)) return false;
    advance();
    return true;
  }

  [[noreturn]] void syntax_error(std::string msg, std::vector<std::string> expected) const
  {
    throw ParseError(Diagnostic{DiagnosticKind::Syntax, cur().loc, std::move(msg), std::move(expected)});
  }

  const Token & expect(TokenKind k, std::string_view context)
  {
    if (!at(k)) {
      syntax_error("unexpected " + std::string(describe(cur().kind)) + " " + std::string(context),
                   {std::string(describe(k))});
    }
    return advance();
  }

  void skip_newlines()
  {
    while (at(TokenKind::Newline)) advance();
  }

  void skip_separators()
  {
    while (at(TokenKind::Newline) || at(TokenKind::Semicolon)) advance();
  }

  std::string identifier(std::string_view context)
  {
    return expect(TokenKind::Identifier, context).text;
  }

  /// Names of modules, timers, rules and endpoints may reuse keyword
  /// spellings (`MAP MODULE CHECK : ...`); relations and fields may not.
  std::string name_or_keyword(std::string_view context)
  {
    if (at(TokenKind::Identifier) || is_keyword(cur().kind)) return advance().text;
    syntax_error("unexpected " + std::string(describe(cur().kind)) + " " + std::string(context),
                 {"identifier"});
  }

  std::vector<std::string> identifier_list(std::string_view context, bool allow_empty)
  {
    std::vector<std::string> names;
    expect(TokenKind::LParen, context);
    if (allow_empty && match(TokenKind::RParen)) return names;
    names.push_back(identifier(context));
    while (match(TokenKind::Comma)) names.push_back(identifier(context));
    expect(TokenKind::RParen, context);
    return names;
  }

  void item(Program & p)
  {
    const SourceLoc loc = cur().loc;
    switch (cur().kind) {
      case TokenKind::KwRelation: {
        advance();
        RelationDecl d;
        d.loc = loc;
        d.name = identifier("in RELATION name");
        d.fields = identifier_list("in RELATION field list", false);
        p.relations.push_back(std::move(d));
        return;
      }
      case TokenKind::KwTrigger: {
        advance();
        TriggerDecl d;
        d.loc = loc;
        expect(TokenKind::LParen, "after TRIGGER");
        d.relation = identifier("in TRIGGER relation");
        expect(TokenKind::RParen, "after TRIGGER relation");
        d.body = block();
        p.triggers.push_back(std::move(d));
        return;
      }
      case TokenKind::KwEndpoint: {
        advance();
        EndpointDecl d;
        d.loc = loc;
        d.name = name_or_keyword("in ENDPOINT name");
        d.params = identifier_list("in ENDPOINT parameter list", true);
        d.body = block();
        p.endpoints.push_back(std::move(d));
        return;
      }
      case TokenKind::KwTimer: {
        advance();
        TimerDecl d;
        d.loc = loc;
        d.name = name_or_keyword("in TIMER name");
        expect(TokenKind::LParen, "after TIMER name");
        const Token & n = expect(TokenKind::Number, "as TIMER interval");
        if (n.number < 1 || n.number != std::floor(n.number) || n.number > 9.0e15) {
          throw ParseError(Diagnostic{DiagnosticKind::Semantic, n.loc,
                                      "timer '" + d.name + "' interval must be a positive integer of milliseconds",
                                      {}});
        }
        d.interval_ms = static_cast<std::int64_t>(n.number);
        expect(TokenKind::RParen, "after TIMER interval");
        d.body = block();
        p.timers.push_back(std::move(d));
        return;
      }
      case TokenKind::KwRule: {
        advance();
        RuleDecl d;
        d.loc = loc;
        d.name = name_or_keyword("in RULE name");
        d.condition = expression();
        d.body = block();
        p.rules.push_back(std::move(d));
        return;
      }
      case TokenKind::KwModule: {
        advance();
        ModuleDecl d;
        d.loc = loc;
        d.name = name_or_keyword("in MODULE name");
        if (at(TokenKind::LParen)) d.outputs = identifier_list("in MODULE output list", true);
        p.modules.push_back(std::move(d));
        return;
      }
      case TokenKind::KwMap: {
        advance();
        MapDecl d;
        d.loc = loc;
        if (match(TokenKind::KwRelation)) {
          d.kind = MapKind::Relation;
          d.name = identifier("in MAP RELATION name");
        } else if (match(TokenKind::KwModule)) {
          d.kind = MapKind::Module;
          d.name = name_or_keyword("in MAP MODULE name");
        } else {
          syntax_error("unexpected " + std::string(describe(cur().kind)) + " after MAP", {"RELATION", "MODULE"});
        }
        expect(TokenKind::Colon, "in MAP declaration");
        if (at(TokenKind::Text) || at(TokenKind::Uri)) {
          d.target = advance().text;
        } else {
          syntax_error("missing MAP target", {"text literal", "URI"});
        }
        p.mappings.push_back(std::move(d));
        return;
      }
      default:
        break;
    }
    if (starts_statement()) {
      p.top_level_statements.push_back(statement());
      return;
    }
    syntax_error("unexpected " + std::string(describe(cur().kind)),
                 {"declaration", "statement"});
  }

  bool starts_statement() const
  {
    switch (cur().kind) {
      case TokenKind::KwStart:
      case TokenKind::KwStop:
      case TokenKind::KwActivate:
      case TokenKind::KwDeactivate:
      case TokenKind::KwCheck:
      case TokenKind::KwCall:
      case TokenKind::KwAcall:
        return true;
      case TokenKind::Identifier:
        return peek().kind == TokenKind::LParen;
      default:
        return false;
    }
  }

  Block block()
  {
    skip_newlines();
    expect(TokenKind::LBrace, "before block");
    Block body;
    while (true) {
      skip_separators();
      if (match(TokenKind::RBrace)) break;
      if (!starts_statement()) {
        syntax_error("unexpected " + std::string(describe(cur().kind)) + " in block", {"statement", "'}'"});
      }
      body.push_back(statement());
      if (!at(TokenKind::Newline) && !at(TokenKind::Semicolon) && !at(TokenKind::RBrace)) {
        syntax_error("unexpected " + std::string(describe(cur().kind)) + " after statement",
                     {"newline", "';'", "'}'"});
      }
    }
    return body;
  }

  std::string parenthesized_name(std::string_view context)
  {
    expect(TokenKind::LParen, context);
    std::string name = name_or_keyword(context);
    expect(TokenKind::RParen, context);
    return name;
  }

  std::vector<Expr> arguments(std::string_view context)
  {
    std::vector<Expr> args;
    expect(TokenKind::LParen, context);
    if (match(TokenKind::RParen)) return args;
    args.push_back(expression());
    while (match(TokenKind::Comma)) args.push_back(expression());
    expect(TokenKind::RParen, context);
    return args;
  }

  Statement statement()
  {
    Statement s;
    s.loc = cur().loc;
    const TokenKind k = advance().kind;
    switch (k) {
      case TokenKind::KwStart:
        s.node = TimerStmt{TimerAction::Start, parenthesized_name("in START")};
        break;
      case TokenKind::KwStop:
        s.node = TimerStmt{TimerAction::Stop, parenthesized_name("in STOP")};
        break;
      case TokenKind::KwActivate:
        s.node = RuleStmt{RuleAction::Activate, parenthesized_name("in ACTIVATE")};
        break;
      case TokenKind::KwDeactivate:
        s.node = RuleStmt{RuleAction::Deactivate, parenthesized_name("in DEACTIVATE")};
        break;
      case TokenKind::KwCheck:
        s.node = RuleStmt{RuleAction::Check, parenthesized_name("in CHECK")};
        break;
      case TokenKind::KwCall:
      case TokenKind::KwAcall: {
        CallStmt c;
        c.mode = k == TokenKind::KwCall ? CallMode::Sync : CallMode::Async;
        c.module = name_or_keyword("as module name");
        c.args = arguments("in module call arguments");
        s.node = std::move(c);
        break;
      }
      default: {
        InsertStmt ins;
        ins.relation = tokens_[idx_ - 1].text;
        ins.args = arguments("in insert arguments");
        s.node = std::move(ins);
        break;
      }
    }
    return s;
  }

  // Expressions, loosest to tightest binding.

  Expr expression() { return or_expr(); }

  Expr or_expr()
  {
    Expr lhs = and_expr();
    while (at(TokenKind::KwOr)) {
      const SourceLoc loc = advance().loc;
      lhs = located(make_binary(BinaryOp::Or, std::move(lhs), and_expr()), loc);
    }
    return lhs;
  }

  Expr and_expr()
  {
    Expr lhs = not_expr();
    while (at(TokenKind::KwAnd)) {
      const SourceLoc loc = advance().loc;
      lhs = located(make_binary(BinaryOp::And, std::move(lhs), not_expr()), loc);
    }
    return lhs;
  }

  Expr not_expr()
  {
    if (at(TokenKind::KwNot)) {
      const SourceLoc loc = advance().loc;
      return located(make_unary(UnaryOp::Not, not_expr()), loc);
    }
    return comparison();
  }

  static std::optional<BinaryOp> comparison_op(TokenKind k)
  {
    switch (k) {
      case TokenKind::Less:
        return BinaryOp::Less;
      case TokenKind::LessEq:
        return BinaryOp::LessEq;
      case TokenKind::Greater:
        return BinaryOp::Greater;
      case TokenKind::GreaterEq:
        return BinaryOp::GreaterEq;
      case TokenKind::EqEq:
        return BinaryOp::Equal;
      case TokenKind::NotEq:
        return BinaryOp::NotEqual;
      default:
        return std::nullopt;
    }
  }

  Expr comparison()
  {
    Expr lhs = additive();
    if (auto op = comparison_op(cur().kind)) {
      const SourceLoc loc = advance().loc;
      Expr rhs = additive();
      if (comparison_op(cur().kind)) {
        syntax_error("comparisons do not chain; parenthesize one side", {"AND", "OR"});
      }
      return located(make_binary(*op, std::move(lhs), std::move(rhs)), loc);
    }
    return lhs;
  }

  Expr additive()
  {
    Expr lhs = multiplicative();
    while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
      const BinaryOp op = at(TokenKind::Plus) ? BinaryOp::Add : BinaryOp::Sub;
      const SourceLoc loc = advance().loc;
      lhs = located(make_binary(op, std::move(lhs), multiplicative()), loc);
    }
    return lhs;
  }

  Expr multiplicative()
  {
    Expr lhs = unary();
    while (at(TokenKind::Star) || at(TokenKind::Slash)) {
      const BinaryOp op = at(TokenKind::Star) ? BinaryOp::Mul : BinaryOp::Div;
      const SourceLoc loc = advance().loc;
      lhs = located(make_binary(op, std::move(lhs), unary()), loc);
    }
    return lhs;
  }

  Expr unary()
  {
    if (at(TokenKind::Minus)) {
      const SourceLoc loc = advance().loc;
      return located(make_unary(UnaryOp::Negate, unary()), loc);
    }
    return primary();
  }

  Expr primary()
  {
    const Token & t = cur();
    const SourceLoc loc = t.loc;
    switch (t.kind) {
      case TokenKind::Number:
        advance();
        return located(make_literal(Value::number(t.number)), loc);
      case TokenKind::Text:
        advance();
        return located(make_literal(Value::text(t.text)), loc);
      case TokenKind::True:
        advance();
        return located(make_literal(Value::boolean(true)), loc);
      case TokenKind::False:
        advance();
        return located(make_literal(Value::boolean(false)), loc);
      case TokenKind::Null:
        advance();
        return located(make_literal(Value::null()), loc);
      case TokenKind::LParen: {
        advance();
        Expr inner = expression();
        expect(TokenKind::RParen, "to close parenthesized expression");
        return inner;
      }
      case TokenKind::Identifier:
        return reference();
      default:
        // Module outputs may be qualified by a keyword-spelled module name.
        if (is_keyword(t.kind) && peek().kind == TokenKind::Dot) return reference();
        syntax_error("unexpected " + std::string(describe(t.kind)) + " in expression",
                     {"number", "text literal", "true", "false", "null", "identifier", "'('", "'-'", "NOT"});
    }
  }

  Expr reference()
  {
    const SourceLoc loc = cur().loc;
    std::string head = advance().text;
    if (!match(TokenKind::Dot)) return located(make_var(std::move(head)), loc);
    std::string field = identifier("after '.'");
    std::int64_t offset = 0;
    if (match(TokenKind::LBracket)) {
      const Token & n = cur();
      if (n.kind != TokenKind::Number) syntax_error("history offset must be a number", {"number"});
      if (n.number > 0 || n.number != std::floor(n.number) || n.number < -9.0e15) {
        throw ParseError(Diagnostic{DiagnosticKind::Syntax, n.loc,
                                    "history offset must be zero or a negative integer, got " + n.text,
                                    {}});
      }
      offset = static_cast<std::int64_t>(n.number);
      advance();
      expect(TokenKind::RBracket, "after history offset");
    }
    return located(make_field(std::move(head), std::move(field), offset), loc);
  }

  static Expr located(Expr e, SourceLoc loc)
  {
    e.loc = loc;
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
};

}  // namespace

Program parse_program(std::string_view source)
{
  Program p = Parser(tokenize(source)).program();
  resolve_and_validate(p);
  return p;
}

Expr parse_expression(std::string_view source) { return Parser(tokenize(source)).standalone_expression(); }

}  // namespace logiciot::lang
