#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "semifib/rational.hpp"

namespace semifib {

// Variable layout of the ambient ring: X1..Xm first, then Y1..Yn.
struct Ring {
  std::size_t m = 0;
  std::size_t n = 0;

  std::size_t size() const { return m + n; }
  std::string variable_name(std::size_t index) const;
  bool operator==(const Ring&) const = default;
};

using Exponents = std::vector<unsigned>;

// Graded lex, largest first; this is also the print order.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

unsigned total_degree(const Exponents& e);

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms never store a zero coefficient, so structural equality is
/// polynomial equality.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(ring) {}

  static Polynomial constant(Ring ring, const Rational& c);
  static Polynomial variable(Ring ring, std::size_t index);
  static Polynomial monomial(Ring ring, Exponents exponents, const Rational& c);

  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant coefficient (the coefficient of the zero monomial).
  Rational constant_value() const;
  // -1 for the zero polynomial.
  int total_degree() const;
  // -1 for the zero polynomial.
  int degree_in(std::size_t var) const;
  // Coefficient of var^k, as a polynomial in the remaining variables.
  Polynomial coefficient_in(std::size_t var, unsigned k) const;
  Polynomial leading_coefficient_in(std::size_t var) const;
  std::set<std::size_t> variables() const;
  // Leading term in graded lex order; precondition: nonzero.
  const Terms::value_type& leading_term() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  bool operator==(const Polynomial& other) const = default;

  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t var) const;
  // Assigns rationals to some variables; the ring is unchanged and the
  // assigned variables simply no longer occur.
  Polynomial substitute(const std::map<std::size_t, Rational>& assignment) const;
  // Replaces variable i by images[i]; all images share the target ring.
  Polynomial compose(std::span<const Polynomial> images, Ring target) const;
  // Same polynomial viewed in a ring where old variable i becomes variable map[i].
  Polynomial rename(Ring target, std::span<const std::size_t> map) const;
  // p(X + c): every variable shifted by the matching entry of c.
  Polynomial shift(std::span<const Rational> center) const;

  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;
  // Same layout, caller-chosen variable names (one per ring variable).
  std::string to_string(std::span<const std::string> names) const;

 private:
  void check_ring(const Polynomial& other) const;
  void add_term(const Exponents& e, const Rational& c);

  Ring ring_;
  Terms terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial sub(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);

// Exact sign of p at a full rational assignment.
int sign_at(const Polynomial& p, std::span<const Rational> point);

// Exact quotient a / b; throws std::domain_error when b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

}  // namespace semifib
