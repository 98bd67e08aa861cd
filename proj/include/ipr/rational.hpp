#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace ipr {

// All scalar arithmetic in the library is exact. cpp_rational keeps values in
// canonical form (gcd(|num|, den) = 1, den > 0, zero is 0/1) by construction.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt rat_num(const Rational& q);
BigInt rat_den(const Rational& q);

// 2^e as an exact rational, e may be negative.
Rational pow2(long e);

// Parses the literal syntax "p/q"; "p" alone means denominator 1.
Rational parse_rational(const std::string& text);

// Canonical form of the same syntax: "p" when the denominator is 1,
// "p/q" otherwise, '-' ahead of the numerator.
std::string rational_to_string(const Rational& q);

std::vector<Rational> parse_rational_list(const std::string& csv);

// Least k >= 0 with 2^k >= q; 0 when q <= 1.
long ceil_log2(const Rational& q);

}  // namespace ipr
