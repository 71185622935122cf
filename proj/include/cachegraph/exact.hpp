#pragma once

// Exact integer and rational arithmetic. Nothing in the core math uses
// floating point; decimals are produced only for human-readable output.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace cachegraph {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

/// base^exp for a possibly negative exponent.
inline Rational rational_pow(std::uint64_t base, long long exp) {
  BigInt p = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp < 0 ? -exp : exp));
  return exp < 0 ? Rational(BigInt(1), p) : Rational(p);
}

inline BigInt int_pow(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// "num/den" (always with a denominator, "3/1" for integers).
std::string to_fraction_string(const Rational& r);

/// Decimal rendering rounded half away from zero to `places` digits.
std::string to_decimal_string(const Rational& r, unsigned places = 6);

/// Parses "a/b", "a" or a plain decimal such as "0.5".
Rational parse_rational(const std::string& text);

}  // namespace cachegraph
