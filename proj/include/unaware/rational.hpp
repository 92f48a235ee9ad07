#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace unaware {

/// Exact rational scalar used for every valuation and transfer.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or an integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering ("p" when the denominator is 1).
std::string to_string(const Rational& value);

/// Decimal rendering for human-facing output only.
std::string to_decimal(const Rational& value, int digits = 6);

}  // namespace unaware
