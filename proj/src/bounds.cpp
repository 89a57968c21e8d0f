#include "semifib/bounds.hpp"

#include <algorithm>

namespace semifib {

namespace {

void require_at_least(const BigInt& v, long minimum, const char* name) {
  if (v < minimum)
    throw std::domain_error(std::string(name) + " must be at least " + std::to_string(minimum));
}

// base^exponent with a size check before anything is allocated.
BigInt checked_pow(const BigInt& base, const BigInt& exponent) {
  if (exponent < 0) throw std::domain_error("negative exponent");
  if (exponent == 0) return 1;
  if (base == 0 || base == 1) return base;
  if (base == -1) return mpz_odd_p(exponent.get_mpz_t()) ? -1 : 1;
  if (!exponent.fits_ulong_p()) throw std::overflow_error("bound exponent too large to evaluate");
  const unsigned long e = exponent.get_ui();
  const unsigned long bits = mpz_sizeinbase(base.get_mpz_t(), 2);
  if (bits > 1 && e > kMaxBoundBits / (bits - 1))
    throw std::overflow_error("bound value exceeds " + std::to_string(kMaxBoundBits) + " bits");
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

BigInt pow2(const BigInt& exponent) { return checked_pow(2, exponent); }

}  // namespace

BigInt binomial(const BigInt& n, unsigned long k) {
  if (n < 0) throw std::domain_error("binomial of a negative number");
  BigInt out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

BigInt bound_main(const BigInt& m, const BigInt& n, const BigInt& s, const BigInt& d, const BigInt& c) {
  require_at_least(m, 1, "m");
  require_at_least(n, 1, "n");
  require_at_least(s, 1, "s");
  require_at_least(d, 1, "d");
  require_at_least(c, 1, "c");
  return checked_pow(pow2(m) * s * n * d, c * n * m);
}

BigInt bound_main_precise(const BigInt& m, const BigInt& n, const BigInt& s, const BigInt& d,
                          const BigInt& c) {
  require_at_least(m, 1, "m");
  require_at_least(n, 1, "n");
  require_at_least(s, 1, "s");
  require_at_least(d, 1, "d");
  require_at_least(c, 1, "c");
  return checked_pow(s, 2 * (m + 1) * n) * checked_pow(pow2(m) * n * d, c * n * m);
}

BigInt bound_lists(const BigInt& m, const BigInt& s, const BigInt& d, const BigInt& c) {
  require_at_least(m, 1, "m");
  require_at_least(s, 1, "s");
  require_at_least(d, 1, "d");
  require_at_least(c, 1, "c");
  if (!d.fits_ulong_p()) throw std::overflow_error("d too large");
  const BigInt N = s * binomial(m + d, d.get_ui());
  return checked_pow(N, c * N * m);
}

BigInt bound_fewnomial(const BigInt& m, const BigInt& r, const BigInt& c) {
  require_at_least(m, 1, "m");
  require_at_least(r, 1, "r");
  require_at_least(c, 1, "c");
  const BigInt base = c * m * r;
  return pow2(base * base * base * base);
}

BigInt bound_additive(const BigInt& m, const BigInt& a, const BigInt& c) {
  require_at_least(m, 1, "m");
  require_at_least(a, 0, "a");
  require_at_least(c, 1, "c");
  const BigInt base = c * (m + a) * a;
  return pow2(base * base * base * base);
}

BigInt bound_pfaffian(const BigInt& m, const BigInt& n, const BigInt& s, const BigInt& r,
                      const BigInt& alpha, const BigInt& beta, const BigInt& c) {
  require_at_least(m, 1, "m");
  require_at_least(n, 1, "n");
  require_at_least(s, 1, "s");
  require_at_least(r, 0, "r");
  require_at_least(alpha, 1, "alpha");
  require_at_least(beta, 0, "beta");
  require_at_least(c, 1, "c");
  return checked_pow(s, c * n * m) * pow2(c * n * (m * m + n * r * r)) *
         checked_pow(n * m * (alpha + beta), c * n * (m + r));
}

CountScheme parse_count_scheme(const std::string& name) {
  if (name == "pprime_paper") return CountScheme::PPrimePaper;
  if (name == "pprime_impl") return CountScheme::PPrimeImpl;
  if (name == "minors_paper") return CountScheme::MinorsPaper;
  if (name == "zsets") return CountScheme::ZSets;
  throw std::invalid_argument("unknown count scheme '" + name + "'");
}

std::string scheme_name(CountScheme scheme) {
  switch (scheme) {
    case CountScheme::PPrimePaper: return "pprime_paper";
    case CountScheme::PPrimeImpl: return "pprime_impl";
    case CountScheme::MinorsPaper: return "minors_paper";
    case CountScheme::ZSets: return "zsets";
  }
  return "?";
}

BigInt count_family(const BigInt& s, const BigInt& m, CountScheme scheme) {
  require_at_least(s, 1, "s");
  require_at_least(m, 1, "m");
  const BigInt members = 2 * s * s;
  switch (scheme) {
    case CountScheme::PPrimePaper: return members;
    case CountScheme::PPrimeImpl: return 2 * members;
    case CountScheme::MinorsPaper: {
      if (!m.fits_ulong_p()) throw std::overflow_error("m too large");
      BigInt total = 0;
      for (unsigned long l = 1; l <= m.get_ui(); ++l) total += binomial(members, l) * binomial(m, l);
      return total;
    }
    case CountScheme::ZSets: {
      if (!m.fits_ulong_p()) throw std::overflow_error("m too large");
      BigInt total = 0;
      for (unsigned long l = 0; l <= m.get_ui() + 1; ++l) total += binomial(members, l);
      return total;
    }
  }
  throw std::invalid_argument("unknown count scheme");
}

MetricRadius metric_radius(const BigInt& M, const BigInt& d, const BigInt& m, const BigInt& c) {
  require_at_least(M, 1, "M");
  require_at_least(d, 1, "d");
  require_at_least(m, 1, "m");
  require_at_least(c, 1, "c");
  MetricRadius out;
  out.value = checked_pow(M, checked_pow(d, c * m));
  if (M < 2 || d < 2)
    out.warning = "M or d below 2: the radius formula degenerates, value reported as computed";
  out.statement =
      "for any R1, R2 above this value the intersections of V with the closed balls of radius R1 "
      "and R2 are homotopy equivalent";
  return out;
}

BoundRow BoundExpr::value(const BoundParams& params, const BigInt& c) const {
  for (const auto& [key, v] : params) {
    (void)v;
    const bool known = std::any_of(this->params.begin(), this->params.end(),
                                   [&](const BoundParam& p) { return p.name == key; });
    if (!known) throw std::invalid_argument("bound '" + name + "' has no parameter '" + key + "'");
  }
  for (const auto& p : this->params) {
    const auto it = params.find(p.name);
    if (it == params.end()) throw std::invalid_argument("bound '" + name + "' needs parameter '" + p.name + "'");
    require_at_least(it->second, p.minimum, p.name.c_str());
  }
  require_at_least(c, 1, "c");
  BoundRow row = evaluate(*this, params, c);
  row.name = name;
  row.symbolic = symbolic;
  row.c = c;
  for (const auto& p : this->params) row.params.emplace_back(p.name, params.at(p.name));
  return row;
}

namespace {

BoundRow row_of(BigInt value) {
  BoundRow r;
  r.value = std::move(value);
  return r;
}

template <CountScheme S>
BoundRow count_row(const BoundExpr&, const BoundParams& p, const BigInt&) {
  return row_of(count_family(p.at("s"), p.at("m"), S));
}

std::vector<BoundExpr> make_registry() {
  std::vector<BoundExpr> r;
  r.push_back({"main", "(2^m*s*n*d)^(c*n*m)", {{"m", 1}, {"n", 1}, {"s", 1}, {"d", 1}},
               [](const BoundExpr&, const BoundParams& p, const BigInt& c) {
                 return row_of(bound_main(p.at("m"), p.at("n"), p.at("s"), p.at("d"), c));
               }});
  r.push_back({"main_precise", "s^(2*(m+1)*n) * (2^m*n*d)^(c*n*m)", {{"m", 1}, {"n", 1}, {"s", 1}, {"d", 1}},
               [](const BoundExpr&, const BoundParams& p, const BigInt& c) {
                 return row_of(bound_main_precise(p.at("m"), p.at("n"), p.at("s"), p.at("d"), c));
               }});
  r.push_back({"lists", "N^(c*N*m), N = s*C(m+d,d)", {{"m", 1}, {"s", 1}, {"d", 1}},
               [](const BoundExpr&, const BoundParams& p, const BigInt& c) {
                 return row_of(bound_lists(p.at("m"), p.at("s"), p.at("d"), c));
               }});
  r.push_back({"fewnomial", "2^((c*m*r)^4)", {{"m", 1}, {"r", 1}},
               [](const BoundExpr&, const BoundParams& p, const BigInt& c) {
                 return row_of(bound_fewnomial(p.at("m"), p.at("r"), c));
               }});
  r.push_back({"additive", "2^((c*(m+a)*a)^4)", {{"m", 1}, {"a", 0}},
               [](const BoundExpr&, const BoundParams& p, const BigInt& c) {
                 return row_of(bound_additive(p.at("m"), p.at("a"), c));
               }});
  r.push_back({"pfaffian", "s^(c*n*m) * 2^(c*n*(m^2+n*r^2)) * (n*m*(alpha+beta))^(c*n*(m+r))",
               {{"m", 1}, {"n", 1}, {"s", 1}, {"r", 0}, {"alpha", 1}, {"beta", 0}},
               [](const BoundExpr&, const BoundParams& p, const BigInt& c) {
                 return row_of(bound_pfaffian(p.at("m"), p.at("n"), p.at("s"), p.at("r"), p.at("alpha"),
                                              p.at("beta"), c));
               }});
  r.push_back({"count_pprime_paper", "2*s^2", {{"s", 1}, {"m", 1}}, count_row<CountScheme::PPrimePaper>});
  r.push_back({"count_pprime_impl", "4*s^2", {{"s", 1}, {"m", 1}}, count_row<CountScheme::PPrimeImpl>});
  r.push_back({"count_minors_paper", "sum_{l=1..m} C(2*s^2,l)*C(m,l)", {{"s", 1}, {"m", 1}},
               count_row<CountScheme::MinorsPaper>});
  r.push_back({"count_zsets", "sum_{l=0..m+1} C(2*s^2,l)", {{"s", 1}, {"m", 1}}, count_row<CountScheme::ZSets>});
  r.push_back({"metric", "M^(d^(c*m))", {{"M", 1}, {"d", 1}, {"m", 1}},
               [](const BoundExpr&, const BoundParams& p, const BigInt& c) {
                 MetricRadius mr = metric_radius(p.at("M"), p.at("d"), p.at("m"), c);
                 BoundRow row = row_of(mr.value);
                 row.warning = mr.warning;
                 row.statement = mr.statement;
                 return row;
               }});
  return r;
}

}  // namespace

const std::vector<BoundExpr>& bound_registry() {
  static const std::vector<BoundExpr> registry = make_registry();
  return registry;
}

const BoundExpr& find_bound(const std::string& name) {
  for (const auto& b : bound_registry())
    if (b.name == name) return b;
  throw UnknownBound("unknown bound '" + name + "'");
}

BoundRow evaluate_bound(const std::string& name, const BoundParams& params, const BigInt& c) {
  return find_bound(name).value(params, c);
}

}  // namespace semifib
