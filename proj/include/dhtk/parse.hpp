#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dhtk/diffpoly.hpp"
#include "dhtk/series.hpp"
#include "dhtk/value.hpp"

namespace dhtk {

/// Grammar (whitespace insignificant):
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' exponent)*
///   atom   := integer | '(' expr ')' | xvar | 't'k | 'O' '(' 't'k ['^' exponent] ')' | symbol
///   xvar   := 'x'k ( "'"* | '^(' integer ')' )
///   exponent := integer | '(' ['-'] integer ['/' integer] ')'
///
/// `x1^(3)` is the third derivative of x1, while `x1'^3` and `(x1)^(3)` are
/// powers. Division is only allowed by x-free expressions. Fractional
/// exponents apply to monomials t_i^e with unit coefficient.
struct ParseOptions {
  /// Number of x variables; 0 infers it from the largest index used.
  int numVars = 0;
  /// Coefficients are lifted to at least this level.
  int minLevel = 0;
  /// Truncation windows for divisions by non-monomial series.
  Tower tower;
  /// Extra names parsed as plain variables with the given index.
  std::map<std::string, int> symbols;
};

DiffPoly parseDiffPoly(std::string_view text, const ParseOptions& options = {});
/// Same grammar without x variables.
Series parseSeries(std::string_view text, const ParseOptions& options = {});
/// Comma-separated series at a common level (commas inside parentheses are
/// part of an entry).
std::vector<Series> parseSeriesList(std::string_view text, const ParseOptions& options = {});
/// "5", "1, -1", "(1/2, 3)", "()" or "inf".
ValueVec parseValueVec(std::string_view text);

}  // namespace dhtk
