#include "logiciot/lang/diagnostics.hpp"

namespace logiciot::lang
{

std::string Diagnostic::render(std::string_view file) const
{
  std::string out(file);
  out += ':' + std::to_string(loc.line) + ':' + std::to_string(loc.column) + ": ";
  switch (kind) {
    case DiagnosticKind::Lexical:
      out += "lexical error: ";
      break;
    case DiagnosticKind::Syntax:
      out += "syntax error: ";
      break;
    case DiagnosticKind::Semantic:
      out += "error: ";
      break;
  }
  out += message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ')';
  }
  return out;
}

ParseError::ParseError(Diagnostic d) : std::runtime_error(d.render("<input>")), diag_(std::move(d)) {}

}  // namespace logiciot::lang
