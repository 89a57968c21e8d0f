#include "semifib/slp.hpp"

#include <random>
#include <sstream>

#include "semifib/syntax.hpp"

namespace semifib {

namespace {

void trim(std::vector<unsigned>& q) {
  while (!q.empty() && q.back() == 0) q.pop_back();
}

ProductTerm zero_term(std::size_t m) { return {Rational(0), Exponents(m, 0), {}}; }

bool same_signature(const ProductTerm& a, const ProductTerm& b) {
  std::vector<unsigned> qa = a.q, qb = b.q;
  trim(qa);
  trim(qb);
  return a.x == b.x && qa == qb;
}

struct Builder {
  std::size_t m;
  std::vector<SLPStep> steps;

  ProductTerm build(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Number: return {e.value, Exponents(m, 0), {}};
      case Expr::Kind::Variable: {
        if (e.block != 'X') throw ParseError("straight-line programs use X variables only", e.column);
        if (e.index >= m) throw ParseError("X" + std::to_string(e.index + 1) + " exceeds m", e.column);
        ProductTerm t{Rational(1), Exponents(m, 0), {}};
        t.x[e.index] = 1;
        return t;
      }
      case Expr::Kind::Reference: throw ParseError("family references are not allowed here", e.column);
      case Expr::Kind::Neg: {
        ProductTerm t = build(e.args[0]);
        t.coef = -t.coef;
        return t;
      }
      case Expr::Kind::Mul: {
        ProductTerm a = build(e.args[0]);
        ProductTerm b = build(e.args[1]);
        if (a.coef == 0 || b.coef == 0) return zero_term(m);
        a.coef *= b.coef;
        for (std::size_t i = 0; i < m; ++i) a.x[i] += b.x[i];
        if (a.q.size() < b.q.size()) a.q.resize(b.q.size(), 0);
        for (std::size_t i = 0; i < b.q.size(); ++i) a.q[i] += b.q[i];
        return a;
      }
      case Expr::Kind::Pow: {
        ProductTerm a = build(e.args[0]);
        if (e.exponent == 0) return {Rational(1), Exponents(m, 0), {}};
        if (a.coef == 0) return zero_term(m);
        a.coef = pow(a.coef, e.exponent);
        for (auto& v : a.x) v *= e.exponent;
        for (auto& v : a.q) v *= e.exponent;
        return a;
      }
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        ProductTerm a = build(e.args[0]);
        ProductTerm b = build(e.args[1]);
        if (e.kind == Expr::Kind::Sub) b.coef = -b.coef;
        if (b.coef == 0) return a;
        if (a.coef == 0) return b;
        if (same_signature(a, b)) {
          a.coef += b.coef;
          return a.coef == 0 ? zero_term(m) : a;
        }
        const std::size_t j = steps.size();
        a.q.resize(j, 0);
        b.q.resize(j, 0);
        steps.push_back({j, std::move(a), std::move(b)});
        ProductTerm q{Rational(1), Exponents(m, 0), std::vector<unsigned>(j + 1, 0)};
        q.q[j] = 1;
        return q;
      }
    }
    throw std::logic_error("unhandled expression kind");
  }
};

Polynomial product_value(const ProductTerm& t, Ring ring, std::span<const Polynomial> q) {
  Exponents e(ring.size(), 0);
  for (std::size_t i = 0; i < t.x.size(); ++i) e[i] = t.x[i];
  Polynomial out = Polynomial::monomial(ring, e, t.coef);
  for (std::size_t i = 0; i < t.q.size(); ++i)
    if (t.q[i] != 0) out *= q[i].pow(t.q[i]);
  return out;
}

// coef * X^x * prod Y^q in the lifted ring, Q_i mapped to Y-block index offset + i.
Polynomial lifted_monomial(const ProductTerm& t, Ring ring, std::size_t offset) {
  Exponents e(ring.size(), 0);
  for (std::size_t i = 0; i < t.x.size(); ++i) e[i] = t.x[i];
  for (std::size_t i = 0; i < t.q.size(); ++i) e[ring.m + offset + i] += t.q[i];
  return Polynomial::monomial(ring, e, t.coef);
}

Rational product_at(const ProductTerm& t, std::span<const Rational> x, std::span<const Rational> q) {
  Rational v = t.coef;
  if (v == 0) return v;
  for (std::size_t i = 0; i < t.x.size(); ++i)
    if (t.x[i] != 0) v *= pow(x[i], t.x[i]);
  for (std::size_t i = 0; i < t.q.size(); ++i)
    if (t.q[i] != 0) v *= pow(q[i], t.q[i]);
  return v;
}

std::string term_text(const ProductTerm& t) {
  std::ostringstream os;
  bool wrote = false;
  const auto put = [&](const std::string& name, unsigned e) {
    if (e == 0) return;
    if (wrote) os << '*';
    os << name;
    if (e != 1) os << '^' << e;
    wrote = true;
  };
  const bool monic = t.coef == 1 || t.coef == -1;
  if (t.coef == -1) os << '-';
  if (!monic) {
    os << to_string(t.coef);
    wrote = true;
  }
  for (std::size_t i = 0; i < t.x.size(); ++i) put("X" + std::to_string(i + 1), t.x[i]);
  for (std::size_t i = 0; i < t.q.size(); ++i) put("Q" + std::to_string(i + 1), t.q[i]);
  if (!wrote) os << '1';
  return os.str();
}

}  // namespace

SLPProgram parse_slp(std::string_view text, std::optional<std::size_t> m) {
  const Expr e = parse_expr(text);
  const Ring inferred = infer_ring(e);
  Builder b{m.value_or(inferred.m), {}};
  ProductTerm final = b.build(e);
  final.q.resize(b.steps.size(), 0);
  return SLPProgram{b.m, std::move(b.steps), std::move(final)};
}

std::size_t count_additive_tokens(std::string_view text) {
  std::size_t count = 0;
  for (const auto& t : tokenize(text))
    if (t.kind == Token::Kind::Symbol && (t.text == "+" || t.text == "-")) ++count;
  return count;
}

std::vector<Polynomial> expand_steps(const SLPProgram& prog) {
  const Ring ring{prog.m, 0};
  std::vector<Polynomial> q;
  for (const auto& s : prog.steps) q.push_back(product_value(s.left, ring, q) + product_value(s.right, ring, q));
  return q;
}

Polynomial expand(const SLPProgram& prog) {
  const auto q = expand_steps(prog);
  return product_value(prog.final, Ring{prog.m, 0}, q);
}

std::string describe(const SLPProgram& prog) {
  std::ostringstream os;
  for (const auto& s : prog.steps) {
    const std::string right = term_text(s.right);
    os << 'Q' << s.index + 1 << " = " << term_text(s.left) << (right.front() == '-' ? " - " : " + ")
       << (right.front() == '-' ? right.substr(1) : right) << "; ";
  }
  os << "P = " << term_text(prog.final);
  return os.str();
}

std::vector<std::string> LiftedSystem::variable_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ring.m; ++i) names.push_back("X" + std::to_string(i + 1));
  for (const auto& v : lift_variables)
    names.push_back("Y_" + std::to_string(v.program + 1) + "_" + std::to_string(v.step + 1));
  return names;
}

std::size_t LiftedSystem::offset(std::size_t program) const {
  for (std::size_t t = 0; t < lift_variables.size(); ++t)
    if (lift_variables[t].program >= program) return t;
  return lift_variables.size();
}

DefinedSet LiftedSystem::defined_set() const {
  DefinedSet set{ring, atoms, rewritten_formula};
  std::vector<Formula> parts{rewritten_formula};
  for (const auto& eq : equations) {
    parts.push_back(Formula::atom(set.family.size(), Relation::Equal));
    set.family.push_back(eq);
  }
  set.formula = Formula::conj(std::move(parts));
  return set;
}

LiftedSystem lift(const std::vector<SLPProgram>& progs, const Formula& formula) {
  if (!formula.atom_indices().empty() && formula.max_index() >= progs.size())
    throw std::invalid_argument("formula atom P" + std::to_string(formula.max_index() + 1) +
                                " references an unknown program");
  std::size_t m = 0, a = 0;
  for (const auto& p : progs) {
    m = std::max(m, p.m);
    a += p.a();
  }
  LiftedSystem ls;
  ls.ring = Ring{m, a};
  std::size_t offset = 0;
  for (std::size_t k = 0; k < progs.size(); ++k) {
    for (const auto& s : progs[k].steps) {
      ls.lift_variables.push_back({k, s.index});
      Polynomial eq = Polynomial::variable(ls.ring, m + offset + s.index);
      eq -= lifted_monomial(s.left, ls.ring, offset);
      eq -= lifted_monomial(s.right, ls.ring, offset);
      ls.equations.push_back(std::move(eq));
    }
    ls.atoms.push_back(lifted_monomial(progs[k].final, ls.ring, offset));
    offset += progs[k].a();
  }
  ls.rewritten_formula = formula;
  return ls;
}

std::vector<Rational> lift_point(const std::vector<SLPProgram>& progs, std::span<const Rational> x) {
  std::vector<Rational> y;
  for (const auto& p : progs) {
    std::vector<Rational> q;
    for (const auto& s : p.steps) q.push_back(product_at(s.left, x, q) + product_at(s.right, x, q));
    y.insert(y.end(), q.begin(), q.end());
  }
  return y;
}

LiftReport verify_lift(const LiftedSystem& ls, const std::vector<SLPProgram>& progs, const Formula& formula,
                       std::size_t sample_count, unsigned long seed) {
  LiftReport report;
  const std::size_t m = ls.m();
  const Ring base{m, 0};

  // Y-block images: the expanded Q's of each program, viewed in (m, 0).
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < m; ++i) images.push_back(Polynomial::variable(base, i));
  std::vector<Polynomial> expanded;
  for (const auto& p : progs) {
    std::vector<std::size_t> embed(p.m);
    for (std::size_t i = 0; i < p.m; ++i) embed[i] = i;
    for (const auto& q : expand_steps(p)) images.push_back(q.rename(base, embed));
    expanded.push_back(expand(p).rename(base, embed));
  }
  if (images.size() != ls.ring.size()) throw std::invalid_argument("lifted system does not match programs");

  for (std::size_t k = 0; k < ls.atoms.size(); ++k)
    if (ls.atoms[k].compose(images, base) != expanded[k]) report.symbolic_failures.push_back(k);
  for (std::size_t t = 0; t < ls.equations.size(); ++t)
    if (!ls.equations[t].compose(images, base).is_zero()) report.equation_failures.push_back(t);
  report.symbolic_ok = report.symbolic_failures.empty() && report.equation_failures.empty();

  for (std::size_t t = 0; t < ls.equations.size(); ++t) {
    const auto& eq = ls.equations[t];
    const std::size_t var = m + t;
    bool ok = eq.degree_in(var) == 1 && eq.coefficient_in(var, 1) == Polynomial::constant(ls.ring, 1);
    for (std::size_t u = t + 1; u < ls.a() && ok; ++u) ok = eq.degree_in(m + u) <= 0;
    for (std::size_t u = 0; u < ls.offset(ls.lift_variables[t].program) && ok; ++u) ok = eq.degree_in(m + u) <= 0;
    if (!ok) report.triangular = false;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-8, 8), den(1, 4);
  const DefinedSet lifted = ls.defined_set();
  for (std::size_t i = 0; i < sample_count; ++i) {
    LiftSample s;
    for (std::size_t v = 0; v < m; ++v) s.x.push_back(i < 3 ? Rational(static_cast<long>(i) - 1) : ratio(num(rng), den(rng)));
    s.y = lift_point(progs, s.x);
    std::vector<int> sg;
    for (const auto& p : expanded) sg.push_back(sign(p.evaluate(s.x)));
    s.original = formula.eval(sg);
    std::vector<Rational> point = s.x;
    point.insert(point.end(), s.y.begin(), s.y.end());
    s.equations_hold = true;
    for (const auto& eq : ls.equations)
      if (eq.evaluate(point) != 0) s.equations_hold = false;
    s.lifted = lifted.contains(point);
    if (s.original != s.lifted || !s.equations_hold) ++report.sample_failures;
    report.samples.push_back(std::move(s));
  }
  return report;
}

}  // namespace semifib
