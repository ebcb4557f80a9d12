#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "logiciot/lang/ast.hpp"

namespace logiciot::lang
{

enum class DiagnosticKind { Lexical, Syntax, Semantic };

struct Diagnostic
{
  DiagnosticKind kind = DiagnosticKind::Syntax;
  SourceLoc loc;
  std::string message;
  /// Token descriptions the parser would have accepted (syntax errors only).
  std::vector<std::string> expected;

  /// `file:line:col: message`
  std::string render(std::string_view file) const;
};

/// Every front-end failure is reported through this exception; it always
/// carries a position.
class ParseError : public std::runtime_error
{
public:
  explicit ParseError(Diagnostic d);

  const Diagnostic & diagnostic() const noexcept { return diag_; }
  DiagnosticKind kind() const noexcept { return diag_.kind; }
  int line() const noexcept { return diag_.loc.line; }
  int column() const noexcept { return diag_.loc.column; }

private:
  Diagnostic diag_;
};

}  // namespace logiciot::lang
