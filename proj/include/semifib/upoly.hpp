#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "semifib/polynomial.hpp"

namespace semifib {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coefficients);

  // Extracts the univariate polynomial in `var`; throws std::invalid_argument
  // when p involves any other variable.
  static UPoly from_polynomial(const Polynomial& p, std::size_t var);
  Polynomial to_polynomial(Ring ring, std::size_t var) const;

  const std::vector<Rational>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }
  const Rational& operator[](std::size_t k) const { return c_[k]; }

  Rational evaluate(const Rational& x) const;
  int sign_at(const Rational& x) const { return sign(evaluate(x)); }
  UPoly derivative() const;
  // p(x + a)
  UPoly taylor_shift(const Rational& a) const;
  // p(s * x)
  UPoly scale(const Rational& s) const;
  // x^d p(1/x)
  UPoly reversed() const;
  // Integer coefficients with content 1 and positive leading coefficient.
  UPoly primitive() const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  bool operator==(const UPoly&) const = default;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder of Euclidean division; b nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// f / gcd(f, f'), primitive with positive leading coefficient. Throws on zero.
UPoly square_free_part(const UPoly& f);
bool is_square_free(const UPoly& f);

// Sign variations of the coefficient sequence, zeros skipped.
int sign_variations(const std::vector<Rational>& coefficients);
// Descartes bound on the number of roots of f in the open interval (a, b).
int descartes_bound(const UPoly& f, const Rational& a, const Rational& b);
// Every real root has absolute value strictly below this power of two.
Rational root_bound(const UPoly& f);

}  // namespace semifib
