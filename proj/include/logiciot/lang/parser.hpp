#pragma once

#include <string_view>

#include "logiciot/lang/ast.hpp"
#include "logiciot/lang/diagnostics.hpp"

namespace logiciot::lang
{

/// Parse and validate a complete program. Syntax and semantic failures are
/// both reported as ParseError with the offending position.
Program parse_program(std::string_view source);

/// Parse a standalone expression (syntax only, no name resolution).
/// `A.B` always parses as a field reference and a bare name as a variable.
Expr parse_expression(std::string_view source);

/// Semantic checks and name resolution on an already-built AST.
///
/// Rewrites `M.out` field references whose prefix names a module into scope
/// variables, then enforces every declaration invariant: unique names per
/// kind, the reserved `T` field, resolvable references, insert arity, at most
/// one trigger per relation, bound variables in blocks, and boolean-typed rule
/// conditions.
void resolve_and_validate(Program & program);

}  // namespace logiciot::lang
