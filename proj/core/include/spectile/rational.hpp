#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace spectile {

/// Exact rational number. Domain endpoints and every quantity derived from
/// them (measures, midpoints, window regions) are kept in this type.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-0.625" or "1.5e-3".
/// Decimals are converted exactly (0.6 becomes 3/5). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact rational value of a finite double.
Rational from_double(double x);

bool is_integer(const Rational& q);

Rational floor(const Rational& q);

Rational abs(const Rational& q);

}  // namespace spectile
