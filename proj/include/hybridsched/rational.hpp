#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hybridsched {

/// Exact arithmetic for every data volume and duration in the library.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Integer ceil_div(const Integer& num, const Integer& den) {
  Integer q = num / den;  // truncates toward zero
  if (q * den != num && ((num > 0) == (den > 0))) ++q;
  return q;
}

inline Integer ceil(const Rational& x) {
  return ceil_div(boost::multiprecision::numerator(x),
                  boost::multiprecision::denominator(x));
}

inline bool is_integer(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// "a/b", or just "a" when the value is integral.
inline std::string to_string(const Rational& x) { return x.str(); }

/// Parses "12", "-3", "0.125", "1e-3", "2.5E2" or "7/3" without rounding.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';

  Integer mantissa = 0;
  long scale = 0;
  bool digits = false;
  bool fraction = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (fraction) --scale;
      digits = true;
    } else if (c == '.' && !fraction) {
      fraction = true;
    } else {
      break;
    }
  }
  if (!digits) fail();

  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail();
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
      exp_negative = text[pos++] == '-';
    if (pos == text.size()) fail();
    long exponent = 0;
    for (; pos < text.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail();
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 4096) fail();
    }
    scale += exp_negative ? -exponent : exponent;
  }

  Rational value(mantissa);
  Integer ten = 10;
  Integer power = boost::multiprecision::pow(ten, static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale < 0) value /= Rational(power);
  else value *= Rational(power);
  return negative ? Rational(-value) : value;
}

}  // namespace hybridsched
