#include "semifib/upoly.hpp"

#include <sstream>
#include <stdexcept>

namespace semifib {

UPoly::UPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_polynomial(const Polynomial& p, std::size_t var) {
  std::vector<Rational> c;
  for (const auto& [e, coeff] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) throw std::invalid_argument("polynomial is not univariate in the requested variable");
    if (c.size() <= e[var]) c.resize(e[var] + 1);
    c[e[var]] += coeff;
  }
  return UPoly(std::move(c));
}

Polynomial UPoly::to_polynomial(Ring ring, std::size_t var) const {
  Polynomial out(ring);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    Exponents e(ring.size(), 0);
    e.at(var) = static_cast<unsigned>(k);
    out += Polynomial::monomial(ring, std::move(e), c_[k]);
  }
  return out;
}

Rational UPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
  return UPoly(std::move(d));
}

UPoly UPoly::taylor_shift(const Rational& a) const {
  std::vector<Rational> c = c_;
  if (a == 0) return UPoly(std::move(c));
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) c[j] += a * c[j + 1];
  return UPoly(std::move(c));
}

UPoly UPoly::scale(const Rational& s) const {
  std::vector<Rational> c = c_;
  Rational power = 1;
  for (auto& x : c) {
    x *= power;
    power *= s;
  }
  return UPoly(std::move(c));
}

UPoly UPoly::reversed() const { return UPoly(std::vector<Rational>(c_.rbegin(), c_.rend())); }

UPoly UPoly::primitive() const {
  if (c_.empty()) return {};
  BigInt den_lcm = 1;
  for (const auto& x : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  BigInt content = 0;
  std::vector<BigInt> ints;
  ints.reserve(c_.size());
  for (const auto& x : c_) {
    BigInt v = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (ints.back() < 0) content = -content;
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (auto& v : ints) out.emplace_back(BigInt(v / content));
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return {};
  std::vector<Rational> c = c_;
  const Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return UPoly(std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    const Rational mag = abs(c_[k]);
    os << (first ? (c_[k] < 0 ? "-" : "") : (c_[k] < 0 ? " - " : " + "));
    first = false;
    if (k == 0 || mag != 1) os << mag.get_str() << (k ? "*" : "");
    if (k) os << var << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> r = a.coefficients();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational factor = r[k + db] / bc[db];
    q[k] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= factor * bc[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a.primitive(), y = b.primitive();
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second.primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly square_free_part(const UPoly& f) {
  if (f.is_zero()) throw std::domain_error("square-free part of the zero polynomial");
  if (f.degree() == 0) return UPoly({Rational(1)});
  const UPoly g = gcd(f, f.derivative());
  return divmod(f, g).first.primitive();
}

bool is_square_free(const UPoly& f) {
  if (f.is_zero()) return false;
  return gcd(f, f.derivative()).degree() <= 0;
}

int sign_variations(const std::vector<Rational>& coefficients) {
  int count = 0, last = 0;
  for (const auto& c : coefficients) {
    const int s = sign(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int descartes_bound(const UPoly& f, const Rational& a, const Rational& b) {
  if (f.is_zero()) throw std::domain_error("Descartes bound of the zero polynomial");
  // g(x) = f(a + (b - a) x) on (0, 1), then (1 + x)^d g(1 / (1 + x)) on (0, inf).
  const UPoly g = f.taylor_shift(a).scale(b - a);
  return sign_variations(g.reversed().taylor_shift(1).coefficients());
}

Rational root_bound(const UPoly& f) {
  if (f.is_zero()) throw std::domain_error("root bound of the zero polynomial");
  Rational m = 0;
  for (int k = 0; k < f.degree(); ++k) m = std::max<Rational>(m, abs(f[k] / f.leading()));
  return power_of_two_above(m + 1) * 2;
}

}  // namespace semifib
