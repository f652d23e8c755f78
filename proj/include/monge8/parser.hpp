#pragma once

#include <string>

#include "monge8/symbolic.hpp"

namespace monge8 {

struct SyntaxError : Error {
  size_t pos;
  SyntaxError(const std::string& msg, size_t p)
      : Error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

struct UnknownIdentifier : Error {
  size_t pos;
  UnknownIdentifier(const std::string& msg, size_t p)
      : Error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

// Grammar: rationals, identifiers, + - * / ^ with the usual precedence,
// parentheses, function application h(y2,y7), derivative atoms D[h,y2,y7],
// sqrt(...). Exponents must reduce to a rational or a linear form in
// parameters.
Expr parse_expr(Context& ctx, const std::string& src);

}  // namespace monge8
