#pragma once

#include <string>

#include "logiciot/lang/ast.hpp"

namespace logiciot::lang
{

/// Canonical source text. parse_program(format_program(p)) == p for every
/// valid program.
std::string format_program(const Program & p);

std::string format_expression(const Expr & e);
std::string format_statement(const Statement & s);

/// Double-quoted literal with backslash escapes.
std::string quote_text(std::string_view s);

}  // namespace logiciot::lang
