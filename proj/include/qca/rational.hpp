#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace qca {

// Arbitrary-precision integers and canonical rationals. cpp_rational keeps
// gcd(|num|, den) = 1 with den > 0 after every operation, which is exactly
// the canonical form the rest of the engine relies on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^exp without overflow (arbitrary precision).
Int pow_int(const Int& base, std::uint64_t exp);

/// num/den in canonical form; the sign moves to the numerator. Throws Error
/// on a zero denominator.
Rational make_rational(Int num, Int den);

std::string to_string(const Int& value);

/// "-3", "0", "3/5" — denominator omitted when 1.
std::string to_string(const Rational& value);

/// Parses INT | INT "/" POSINT | DECIMAL. Decimals convert exactly
/// (0.5 -> 1/2). Throws Error on anything else.
Rational parse_rational(std::string_view text);

/// True iff value is the square of a rational.
bool is_perfect_square(const Rational& value);

/// The nonnegative rational square root. Pre: is_perfect_square(value).
Rational exact_sqrt(const Rational& value);

}  // namespace qca
