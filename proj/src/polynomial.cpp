#include "semifib/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace semifib {

std::string Ring::variable_name(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("variable index out of range");
  return index < m ? "X" + std::to_string(index + 1) : "Y" + std::to_string(index - m + 1);
}

unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(Ring ring, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.emplace(Exponents(ring.size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  if (index >= ring.size()) throw std::out_of_range("variable index out of range");
  Exponents e(ring.size(), 0);
  e[index] = 1;
  return monomial(ring, std::move(e), 1);
}

Polynomial Polynomial::monomial(Ring ring, Exponents exponents, const Rational& c) {
  if (exponents.size() != ring.size()) throw std::invalid_argument("exponent vector does not match ring");
  Polynomial p(ring);
  if (c != 0) p.terms_.emplace(std::move(exponents), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational Polynomial::constant_value() const {
  auto it = terms_.find(Exponents(ring_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(semifib::total_degree(terms_.begin()->first));
}

int Polynomial::degree_in(std::size_t var) const {
  if (var >= ring_.size()) throw std::out_of_range("variable index out of range");
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

Polynomial Polynomial::coefficient_in(std::size_t var, unsigned k) const {
  if (var >= ring_.size()) throw std::out_of_range("variable index out of range");
  Polynomial out(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponents f = e;
    f[var] = 0;
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

Polynomial Polynomial::leading_coefficient_in(std::size_t var) const {
  const int d = degree_in(var);
  return d < 0 ? Polynomial(ring_) : coefficient_in(var, static_cast<unsigned>(d));
}

std::set<std::size_t> Polynomial::variables() const {
  std::set<std::size_t> out;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) out.insert(i);
  return out;
}

const Polynomial::Terms::value_type& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return *terms_.begin();
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (!(ring_ == other.ring_)) throw std::invalid_argument("ring mismatch");
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  Polynomial out(a.ring_);
  Exponents e(a.ring_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ring_.size()) throw std::out_of_range("variable index out of range");
  Polynomial out(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    out.add_term(f, c * e[var]);
  }
  return out;
}

Polynomial Polynomial::substitute(const std::map<std::size_t, Rational>& assignment) const {
  for (const auto& [var, value] : assignment)
    if (var >= ring_.size()) throw std::out_of_range("variable index out of range");
  Polynomial out(ring_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    Rational coeff = c;
    for (const auto& [var, value] : assignment) {
      if (f[var] == 0) continue;
      coeff *= semifib::pow(value, f[var]);
      f[var] = 0;
    }
    out.add_term(f, coeff);
  }
  return out;
}

Polynomial Polynomial::compose(std::span<const Polynomial> images, Ring target) const {
  if (images.size() != ring_.size()) throw std::invalid_argument("compose needs one image per variable");
  for (const auto& img : images)
    if (!(img.ring() == target)) throw std::invalid_argument("ring mismatch");
  // Cache powers per variable.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t var, unsigned k) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

Polynomial Polynomial::rename(Ring target, std::span<const std::size_t> map) const {
  if (map.size() != ring_.size()) throw std::invalid_argument("rename needs one target per variable");
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Exponents f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] >= target.size()) throw std::out_of_range("variable index out of range");
      f[map[i]] += e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

Polynomial Polynomial::shift(std::span<const Rational> center) const {
  if (center.size() != ring_.size()) throw std::invalid_argument("shift needs one offset per variable");
  std::vector<Polynomial> images;
  images.reserve(center.size());
  for (std::size_t i = 0; i < center.size(); ++i)
    images.push_back(variable(ring_, i) + constant(ring_, center[i]));
  return compose(images, ring_);
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != ring_.size()) throw std::invalid_argument("point dimension does not match ring");
  std::vector<std::vector<Rational>> powers(point.size());
  auto power = [&](std::size_t var, unsigned k) -> const Rational& {
    auto& cache = powers[var];
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= k) cache.push_back(cache.back() * point[var]);
    return cache[k];
  };
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= power(i, e[i]);
    sum += t;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ring_.size(); ++i) names.push_back(ring_.variable_name(i));
  return to_string(names);
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() != ring_.size()) throw std::invalid_argument("name list does not match ring");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = semifib::total_degree(e) == 0;
    bool wrote = false;
    if (is_const || magnitude != 1) {
      os << magnitude.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << names[i];
      if (e[i] != 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial sub(const Polynomial& a, const Polynomial& b) { return a - b; }
Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }
Polynomial partial_derivative(const Polynomial& p, std::size_t var) { return p.derivative(var); }

int sign_at(const Polynomial& p, std::span<const Rational> point) { return sign(p.evaluate(point)); }

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (!(a.ring() == b.ring())) throw std::invalid_argument("ring mismatch");
  const auto& [lead_e, lead_c] = b.leading_term();
  Polynomial quotient(a.ring());
  Polynomial rest = a;
  while (!rest.is_zero()) {
    const auto& [e, c] = rest.leading_term();
    Exponents q(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < lead_e[i]) throw std::domain_error("inexact polynomial division");
      q[i] = e[i] - lead_e[i];
    }
    Polynomial t = Polynomial::monomial(a.ring(), std::move(q), c / lead_c);
    quotient += t;
    rest -= t * b;
  }
  return quotient;
}

}  // namespace semifib
