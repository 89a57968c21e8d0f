#include "semifib/perturb.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "semifib/matrix.hpp"
#include "semifib/upoly.hpp"

namespace semifib {

EpsilonLadder::EpsilonLadder(std::size_t s, Rational delta) : s_(s), delta_(std::move(delta)) {
  if (s == 0) throw std::invalid_argument("ladder needs a nonempty family");
  if (delta_ <= 0 || delta_ >= 1) throw std::invalid_argument("delta must lie strictly between 0 and 1");
}

unsigned long EpsilonLadder::exponent(std::size_t i, std::size_t j) const {
  if (i < 1 || i > 2 * s_ || j < 1 || j > s_) throw std::out_of_range("ladder index out of range");
  return (2 * s_ - i) * s_ + j;
}

Rational EpsilonLadder::value(std::size_t i, std::size_t j) const { return pow(delta_, exponent(i, j)); }

std::vector<Rational> EpsilonLadder::chain() const {
  std::vector<Rational> out;
  for (std::size_t i = 2 * s_; i >= 1; --i)
    for (std::size_t j = 1; j <= s_; ++j) out.push_back(value(i, j));
  return out;
}

PerturbedFamily::PerturbedFamily(std::vector<Polynomial> base, EpsilonLadder ladder)
    : base_(std::move(base)), ladder_(std::move(ladder)) {
  if (base_.empty()) throw std::invalid_argument("perturbation of an empty family");
  if (ladder_.s() != base_.size()) throw std::invalid_argument("ladder size does not match the family");
  ring_ = base_.front().ring();
  for (const auto& p : base_)
    if (!(p.ring() == ring_)) throw std::invalid_argument("family polynomials from different rings");
  for (std::size_t i = 1; i <= 2 * s(); ++i)
    for (std::size_t j = 1; j <= s(); ++j)
      for (int shift : {-1, 1}) {
        const Rational e = ladder_.value(i, j);
        members_.push_back(base_[j - 1] + Polynomial::constant(ring_, shift > 0 ? e : Rational(-e)));
        meta_.push_back({i, j, shift});
      }
}

std::size_t PerturbedFamily::member_index(std::size_t i, std::size_t j, int shift) const {
  if (i < 1 || i > 2 * s() || j < 1 || j > s()) throw std::out_of_range("member index out of range");
  return ((i - 1) * s() + (j - 1)) * 2 + (shift > 0 ? 1 : 0);
}

std::vector<Polynomial> PerturbedFamily::combined() const {
  std::vector<Polynomial> out = members_;
  out.insert(out.end(), base_.begin(), base_.end());
  return out;
}

std::string PerturbedFamily::member_name(std::size_t k) const {
  const Member& m = meta_.at(k);
  return "P" + std::to_string(m.j) + (m.shift > 0 ? "+" : "-") + "e" + std::to_string(m.i) + "_" + std::to_string(m.j);
}

std::vector<std::string> PerturbedFamily::combined_names() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < members_.size(); ++k) out.push_back(member_name(k));
  for (std::size_t j = 1; j <= s(); ++j) out.push_back("P" + std::to_string(j));
  return out;
}

namespace {

void require_base_condition(const SignCondition& sc, const PerturbedFamily& pf) {
  if (sc.size() != pf.s()) throw std::invalid_argument("sign condition does not match the base family");
}

Formula thickening(const SignCondition& sc, const PerturbedFamily& pf, bool closed) {
  require_base_condition(sc, pf);
  const std::size_t level = sc.level();
  std::vector<Formula> parts;
  for (std::size_t j = 1; j <= pf.s(); ++j) {
    const int s = sc.signs[j - 1];
    if (s == 0) {
      const std::size_t row = closed ? 2 * level : 2 * level - 1;
      parts.push_back(Formula::atom(pf.member_index(row, j, -1), closed ? Relation::LessEq : Relation::Less));
      parts.push_back(Formula::atom(pf.member_index(row, j, +1), closed ? Relation::GreaterEq : Relation::Greater));
    } else if (s > 0) {
      parts.push_back(Formula::atom(pf.base_index(j), closed ? Relation::GreaterEq : Relation::Greater));
    } else {
      parts.push_back(Formula::atom(pf.base_index(j), closed ? Relation::LessEq : Relation::Less));
    }
  }
  return Formula::conj(std::move(parts));
}

}  // namespace

Formula sigma_plus(const SignCondition& sc, const PerturbedFamily& pf) { return thickening(sc, pf, true); }
Formula sigma_minus(const SignCondition& sc, const PerturbedFamily& pf) { return thickening(sc, pf, false); }

Formula build_unrewritten(std::span<const SignCondition> sigma_set, std::span<const SignCondition> realizable,
                          const PerturbedFamily& pf) {
  for (const auto& sc : sigma_set) require_base_condition(sc, pf);
  for (const auto& sc : realizable) require_base_condition(sc, pf);
  const std::set<SignCondition> in_sigma(sigma_set.begin(), sigma_set.end());
  // Excluded open thickenings, grouped by level.
  std::map<std::size_t, std::vector<Formula>> removed;
  for (const auto& tau : std::set<SignCondition>(realizable.begin(), realizable.end()))
    if (!in_sigma.count(tau)) removed[tau.level()].push_back(sigma_minus(tau, pf).negated());

  std::vector<Formula> terms;
  for (const auto& sigma : in_sigma) {
    std::vector<Formula> parts{sigma_plus(sigma, pf)};
    for (auto it = removed.upper_bound(sigma.level()); it != removed.end(); ++it)
      parts.insert(parts.end(), it->second.begin(), it->second.end());
    terms.push_back(Formula::conj(std::move(parts)));
  }
  return Formula::disj(std::move(terms));
}

Formula rewrite_closed(const Formula& f, const PerturbedFamily& pf) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Atom: {
      if (f.index() < pf.member_count()) return f;
      const std::size_t j = f.index() - pf.member_count() + 1;
      switch (f.relation()) {
        case Relation::GreaterEq: return Formula::atom(pf.member_index(2, j, -1), Relation::GreaterEq);
        case Relation::LessEq: return Formula::atom(pf.member_index(2, j, +1), Relation::LessEq);
        case Relation::Equal:
          return Formula::conj({Formula::atom(pf.member_index(2, j, -1), Relation::GreaterEq),
                                Formula::atom(pf.member_index(2, j, +1), Relation::LessEq)});
        default: throw std::invalid_argument("closed rewrite of a strict base atom");
      }
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(rewrite_closed(c, pf));
      return f.kind() == Formula::Kind::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
  }
  return f;
}

ClosedSetDescription construct_S_prime(std::span<const SignCondition> sigma_set,
                                       std::span<const SignCondition> realizable, const PerturbedFamily& pf) {
  const Formula closed = rewrite_closed(build_unrewritten(sigma_set, realizable, pf), pf);
  return {DefinedSet{pf.ring(), pf.combined(), closed}};
}

RankReport check_rank_genericity(const PerturbedFamily& pf, const SignCondition& sc, std::span<Witness> witnesses) {
  if (sc.size() != pf.member_count()) throw std::invalid_argument("sign condition does not match the members");
  return check_rank_genericity(pf.members(), sc, witnesses);
}

RankReport check_rank_genericity(std::span<const Polynomial> family, const SignCondition& sc,
                                 std::span<Witness> witnesses) {
  if (sc.size() != family.size()) throw std::invalid_argument("sign condition does not match the family");
  RankReport report;
  const auto active = sc.zero_indices();
  report.level = active.size();
  if (active.empty()) return report;
  const Ring ring = family.front().ring();
  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    Witness& wit = witnesses[w];
    if (signs_at(family, wit) != sc.signs) throw std::invalid_argument("witness does not lie on the stratum");
    ++report.checked;
    std::size_t r = 0;
    if (wit.is_rational()) {
      std::vector<std::vector<Rational>> rows;
      for (std::size_t k : active) {
        std::vector<Rational> row;
        for (std::size_t v = 0; v < ring.size(); ++v)
          row.push_back(partial_derivative(family[k], v).evaluate(wit.coords));
        rows.push_back(std::move(row));
      }
      r = rank(std::move(rows));
    } else {
      // Coordinate 0 is algebraic: look for a nonvanishing maximal minor,
      // each minor restricted to a univariate polynomial in that coordinate.
      std::map<std::size_t, Rational> rest;
      for (std::size_t v = 1; v < ring.size(); ++v) rest[v] = wit.coords[v];
      PolyMatrix jac(ring, active.size(), ring.size());
      for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t v = 0; v < ring.size(); ++v)
          jac.at(a, v) = partial_derivative(family[active[a]], v).substitute(rest);
      std::vector<std::size_t> rows(active.size());
      for (std::size_t a = 0; a < rows.size(); ++a) rows[a] = a;
      // Largest k with a nonzero k x k minor.
      for (std::size_t k = std::min(active.size(), ring.size()); k >= 1 && r == 0; --k) {
        std::vector<bool> pick(ring.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        std::vector<bool> rpick(active.size(), false);
        std::fill(rpick.begin(), rpick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
          std::vector<std::size_t> rsel;
          for (std::size_t a = 0; a < rpick.size(); ++a)
            if (rpick[a]) rsel.push_back(a);
          std::vector<bool> cp = pick;
          do {
            std::vector<std::size_t> csel;
            for (std::size_t v = 0; v < cp.size(); ++v)
              if (cp[v]) csel.push_back(v);
            const Polynomial minor = determinant(jac.submatrix(rsel, csel));
            if (wit.algebraic->sign_of(UPoly::from_polynomial(minor, 0)) != 0) r = k;
          } while (r == 0 && std::prev_permutation(cp.begin(), cp.end()));
        } while (r == 0 && std::prev_permutation(rpick.begin(), rpick.end()));
      }
    }
    if (r < active.size()) report.failures.push_back({w, r});
  }
  return report;
}

}  // namespace semifib
