#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sosbound {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" or a decimal such as "-2.048" exactly.
/// Throws InvalidArgument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is one).
std::string to_string(const Rational& q);

/// The exact binary value of a finite double.
Rational rational_from_double(double v);

double to_double(const Rational& q);

/// Integer power; negative exponents invert.
Rational pow(const Rational& base, int exponent);

Rational factorial(unsigned k);

/// k!! with the conventions 0!! = (-1)!! = 1.
Rational double_factorial(int k);

}  // namespace sosbound
