#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "logiciot/lang/ast.hpp"

namespace logiciot::lang
{

enum class TokenKind {
  // keywords
  KwRelation,
  KwTrigger,
  KwEndpoint,
  KwTimer,
  KwRule,
  KwModule,
  KwMap,
  KwStart,
  KwStop,
  KwActivate,
  KwDeactivate,
  KwCheck,
  KwCall,
  KwAcall,
  KwAnd,
  KwOr,
  KwNot,
  // literal words
  True,
  False,
  Null,

  Identifier,
  Number,
  Text,
  /// Unquoted MAP target (`module1.jsp`, `http://host/x`).
  Uri,

  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Dot,
  Semicolon,

  Plus,
  Minus,
  Star,
  Slash,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  EqEq,
  NotEq,

  Newline,
  Eof,
};

struct Token
{
  TokenKind kind = TokenKind::Eof;
  /// Identifier/keyword spelling, decoded text contents, URI text, or the
  /// number's source spelling.
  std::string text;
  double number = 0;
  SourceLoc loc;

  friend bool operator==(const Token & a, const Token & b)
  {
    return a.kind == b.kind && a.text == b.text && a.number == b.number;
  }
};

bool is_keyword(TokenKind k) noexcept;
std::string_view describe(TokenKind k) noexcept;

/// Split source into tokens. Newline tokens are emitted only outside
/// parentheses and brackets, and the trailing Eof token is not included.
/// Throws ParseError (Lexical) on an unterminated text literal or an illegal
/// character.
std::vector<Token> tokenize(std::string_view source);

}  // namespace logiciot::lang
