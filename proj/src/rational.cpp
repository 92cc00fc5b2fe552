#include "spround/rational.hpp"

#include <limits>
#include <stdexcept>

namespace spround {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_digits(std::string_view s) {
  BigInt out = 0;
  for (char c : s) out = out * 10 + (c - '0');
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    BigInt d = parse_digits(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(parse_digits(num), d);
  } else {
    auto dot = text.find('.');
    auto whole = text.substr(0, dot);
    auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    bool ok = dot == std::string_view::npos ? all_digits(whole)
                                            : (whole.empty() || all_digits(whole)) &&
                                                  (frac.empty() || all_digits(frac)) &&
                                                  !(whole.empty() && frac.empty());
    if (!ok) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt numerator = (whole.empty() ? BigInt(0) : parse_digits(whole)) * scale +
                       (frac.empty() ? BigInt(0) : parse_digits(frac));
    value = Rational(numerator, scale);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) { return -floor(Rational(-value)); }

Rational fractional_part(const Rational& value) { return value - Rational(floor(value)); }

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer " + value.str() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace spround
