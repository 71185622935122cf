#include "cachegraph/gaussian.hpp"

#include "cachegraph/error.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace cachegraph {

BigInt gaussian_binomial(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidArgs, "gaussian_binomial requires q >= 2");
  if (b > a) throw Error(ErrorCode::InvalidArgs, "gaussian_binomial requires b <= a");
  b = std::min(b, a - b);
  BigInt num = 1, den = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    num *= int_pow(q, static_cast<unsigned>(a - i)) - 1;
    den *= int_pow(q, static_cast<unsigned>(b - i)) - 1;
  }
  return num / den;
}

BigInt count_intersecting(std::uint64_t m, std::uint64_t t, std::uint64_t i, std::uint64_t q) {
  if (i < 1 || i > std::min(m, t))
    throw Error(ErrorCode::InvalidArgs, "count_intersecting requires 1 <= i <= min(m, t)");
  return int_pow(q, static_cast<unsigned>((m - i) * (t - i))) * gaussian_binomial(m, i, q) *
         gaussian_binomial(t, i, q);
}

std::uint64_t to_u64(const BigInt& value) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::CapExceeded, "value does not fit in 64 bits");
  return value.convert_to<std::uint64_t>();
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::string to_fraction_string(const Rational& r) {
  std::ostringstream out;
  out << numerator(r) << '/' << denominator(r);
  return out.str();
}

std::string to_decimal_string(const Rational& r, unsigned places) {
  const BigInt scale = int_pow(10, places);
  BigInt num = numerator(r), den = denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale, frac = scaled % scale;
  std::ostringstream out;
  if (negative && scaled != 0) out << '-';
  out << whole;
  if (places > 0) {
    std::string f = frac.str();
    out << '.' << std::string(places - f.size(), '0') << f;
  }
  return out.str();
}

namespace {

// Decimal integer with optional sign. Leading zeros are stripped first: the
// BigInt string constructor would read them as an octal prefix.
BigInt parse_integer(std::string text, const std::string& original) {
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::InvalidArgs, "cannot parse rational '" + original + "'");
  const auto nonzero = text.find_first_not_of('0');
  const BigInt value(nonzero == std::string::npos ? std::string("0") : text.substr(nonzero));
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), text), den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::InvalidArgs, "zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_integer(text, text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (text.size() - dot - 1 == 0) throw Error(ErrorCode::InvalidArgs, "cannot parse rational '" + text + "'");
  return Rational(parse_integer(digits, text), int_pow(10, static_cast<unsigned>(text.size() - dot - 1)));
}

}  // namespace cachegraph
