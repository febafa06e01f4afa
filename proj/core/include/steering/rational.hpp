#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace steering {

// Arbitrary-precision rational, always canonical (lowest terms, positive
// denominator).
using Rational = mpq_class;

// Parses "p/q" or an integer literal "p". Throws InvariantViolation on
// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Parses a plain decimal literal ("0.25", "-3", "1.5e-2") to its exact value.
Rational parse_decimal_exact(std::string_view text);

// True if `text` is "p/q" or an integer literal.
bool is_rational_literal(std::string_view text);

// "p/q", or "p" for integers.
std::string to_string(const Rational& value);

// Nearest double (GMP's own conversion truncates toward zero).
double to_double(const Rational& value);

// Exact value of a finite double.
Rational exact_from_double(double value);

}  // namespace steering
