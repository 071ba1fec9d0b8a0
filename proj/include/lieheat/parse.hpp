#pragma once

#include "lieheat/expr.hpp"

#include <string_view>

namespace lieheat {

/// Parses the expression grammar
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' integer)?
///   primary := integer | identifier | '(' expr ')'
///
/// Division is only allowed by a nonzero unit (a rational times invertible
/// constants), so `p/q` and `x/alpha` work while `x/t` does not. Exponents are
/// nonnegative integer literals. Implicit multiplication is rejected.
/// Throws ParseError (with byte offset) or UnknownSymbol.
Expr parse_expr(std::string_view text);

}  // namespace lieheat
