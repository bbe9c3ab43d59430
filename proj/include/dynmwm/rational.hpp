#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace dynmwm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "7", "-3", "3/4", "1.25", "0.001". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Terminating decimals are written in decimal form ("1.25"), everything
// else as "p/q". parse_rational(format_rational(x)) == x always holds.
std::string format_rational(const Rational& x);

Rational rational_pow(const Rational& base, long exponent);

// Largest j with base^j <= x. Requires x > 0 and base > 1.
long floor_log(const Rational& x, const Rational& base);

// Smallest j with base^j >= x. Requires x > 0 and base > 1.
long ceil_log(const Rational& x, const Rational& base);

// r >= base^x for rational x (base > 1, r > 0).
bool pow_ge(const Rational& r, const Rational& base, const Rational& x);

BigInt floor_div(const Rational& x);
BigInt ceil_div(const Rational& x);

double to_double(const Rational& x);

}  // namespace dynmwm
