#include "semifib/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace semifib {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (num.front() == '+') num.erase(0, 1);
  BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q{BigInt(num), d};
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, unsigned long exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r{num, den};
  r.canonicalize();
  return r;
}

Rational power_of_two_above(const Rational& q) {
  Rational a = abs(q);
  Rational p = 1;
  while (p < a) p *= 2;
  return p;
}

}  // namespace semifib
