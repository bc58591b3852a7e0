#pragma once

#include <string_view>

#include "quadobs/polynomial.h"
#include "quadobs/vector_field.h"

namespace quadobs {

/// Parses a polynomial in x1..x<num_vars>.
///
/// Grammar: `+ - * ^`, parentheses, integer and decimal literals (decimals
/// are converted exactly, 0.25 -> 1/4) and division by constant
/// subexpressions, so `3/2*x1^2` is accepted. Throws ParseError with the
/// 1-based column of the offending token.
Polynomial parse_polynomial(std::string_view text, int num_vars);

/// Parses `dim` components separated by ';', e.g. "0; x1; x2^2 + x1^3".
PolyVectorField parse_vector_field(std::string_view text, int dim);

/// Parses a rational literal: "3", "-2/7", "0.125".
Rational parse_rational(std::string_view text);

}  // namespace quadobs
