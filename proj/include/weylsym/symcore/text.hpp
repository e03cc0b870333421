#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "weylsym/symcore/ratexpr.hpp"

namespace weylsym {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(const Rational& r);
std::string to_string(const Monomial& m, const SymbolTable& table);
/// Canonical infix, terms in graded-lex order: "-x^2*w + a2*x + 1/2".
std::string to_string(const Poly& p, const SymbolTable& table);
/// "num" when the denominator is one, otherwise "(num)/(den)".
std::string to_string(const RatExpr& e, const SymbolTable& table);

/// Parses + - * / ^ (nonnegative integer exponents), parentheses, integer
/// literals and symbol names from `table`.
RatExpr parse_expression(std::string_view text, const SymbolTable& table);

}  // namespace weylsym
