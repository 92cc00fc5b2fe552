#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace spround {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "2.5", ".25", "1/3" into an exact rational. A leading '-' is
/// accepted so callers can report negative weights with a better message.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Lowest-terms rendering: "5/2", "3", "-1/4".
std::string to_string(const Rational& value);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

/// value - floor(value), always in [0, 1).
Rational fractional_part(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// Narrowing with a range check; throws std::overflow_error.
std::int64_t to_int64(const BigInt& value);

}  // namespace spround
