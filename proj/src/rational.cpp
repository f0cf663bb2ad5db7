#include "dmh/rational.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace dmh {

Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) fail();

  auto parse_int = [&](std::string_view digits) {
    bool negative = false;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      negative = digits.front() == '-';
      digits.remove_prefix(1);
    }
    if (digits.empty()) fail();
    BigInt value = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') fail();
      value = value * 10 + (ch - '0');
    }
    return negative ? BigInt(-value) : value;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  // decimal with optional fraction and exponent
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size()) fail();
  }
  std::string digits;
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  } else {
    digits = std::string(mantissa);
  }
  if (digits.empty()) fail();
  BigInt num = parse_int(digits);
  if (negative) num = -num;
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
  return exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
}

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 significant bits fit a 64-bit integer exactly.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result(scaled);
  if (exponent >= 0) {
    result *= Rational(BigInt(1) << exponent);
  } else {
    result /= Rational(BigInt(1) << -exponent);
  }
  return result;
}

Rational rational_from_decimal(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format double");
  return parse_rational(std::string_view(buffer, static_cast<std::size_t>(ptr - buffer)));
}

}  // namespace dmh
