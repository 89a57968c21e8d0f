#include "semifib/semialg.hpp"

#include <array>
#include <map>
#include <stdexcept>

#include "semifib/matrix.hpp"
#include "semifib/upoly.hpp"

namespace semifib {

std::size_t SignCondition::level() const {
  std::size_t n = 0;
  for (int s : signs) n += s == 0;
  return n;
}

std::vector<std::size_t> SignCondition::zero_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] == 0) out.push_back(i);
  return out;
}

Formula realization_formula(const SignCondition& sc) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < sc.signs.size(); ++i) {
    const int s = sc.signs[i];
    parts.push_back(Formula::atom(i, s < 0 ? Relation::Less : (s == 0 ? Relation::Equal : Relation::Greater)));
  }
  return Formula::conj(std::move(parts));
}

Formula zset_formula(const SignCondition& sc) {
  std::vector<Formula> parts;
  for (std::size_t i : sc.zero_indices()) parts.push_back(Formula::atom(i, Relation::Equal));
  return Formula::conj(std::move(parts));
}

std::vector<int> signs_at(std::span<const Polynomial> family, Witness& w) {
  std::vector<int> out;
  out.reserve(family.size());
  for (const auto& p : family) {
    if (!w.algebraic) {
      out.push_back(sign_at(p, w.coords));
      continue;
    }
    std::map<std::size_t, Rational> rest;
    for (std::size_t v = 1; v < w.coords.size(); ++v) rest[v] = w.coords[v];
    out.push_back(w.algebraic->sign_of(UPoly::from_polynomial(p.substitute(rest), 0)));
  }
  return out;
}

Box Box::unbounded(std::size_t dim) { return Box{std::vector<std::optional<Rational>>(dim), std::vector<std::optional<Rational>>(dim)}; }

Box Box::cube(std::size_t dim, const Rational& lo, const Rational& hi) {
  return Box{std::vector<std::optional<Rational>>(dim, lo), std::vector<std::optional<Rational>>(dim, hi)};
}

bool Box::contains(std::span<const Rational> point) const {
  for (std::size_t v = 0; v < point.size(); ++v) {
    if (lo[v] && point[v] < *lo[v]) return false;
    if (hi[v] && point[v] > *hi[v]) return false;
  }
  return true;
}

namespace {

Rational radical_inverse(unsigned long index, unsigned long base) {
  Rational out = 0;
  Rational scale(1, base);
  while (index > 0) {
    out += scale * static_cast<long>(index % base);
    index /= base;
    scale /= static_cast<long>(base);
  }
  return out;
}

const unsigned long kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Sampling range of a coordinate; unbounded sides get a default width.
std::pair<Rational, Rational> sample_range(const Box& box, std::size_t v) {
  const Rational width = 8;
  if (box.lo[v] && box.hi[v]) return {*box.lo[v], *box.hi[v]};
  if (box.lo[v]) return {*box.lo[v], *box.lo[v] + width};
  if (box.hi[v]) return {*box.hi[v] - width, *box.hi[v]};
  return {-width / 2, width / 2};
}

// Rational strictly between two separated real algebraic numbers a < b.
Rational between(RealAlgebraic& a, RealAlgebraic& b) {
  while (!(a.interval().hi < b.interval().lo)) {
    a.refine();
    b.refine();
  }
  return (a.interval().hi + b.interval().lo) / 2;
}

// Sample points of the line inside [lo, hi] (either bound optional):
// every root of the inputs, the bounds, and one rational per open gap.
std::vector<RealAlgebraic> line_samples(const std::vector<UPoly>& polys, const std::optional<Rational>& lo,
                                        const std::optional<Rational>& hi) {
  std::vector<RealAlgebraic> breaks;
  if (lo) breaks.emplace_back(*lo);
  for (auto& r : merged_real_roots(polys)) {
    if (lo && compare(r.value, *lo) <= 0) continue;
    if (hi && compare(r.value, *hi) >= 0) continue;
    breaks.push_back(r.value);
  }
  if (hi && !(lo && *lo == *hi)) breaks.emplace_back(*hi);

  std::vector<RealAlgebraic> out;
  if (breaks.empty()) {
    out.emplace_back(Rational(0));
    return out;
  }
  if (!lo) out.emplace_back(Rational(breaks.front().interval().lo - 1));
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (i > 0) out.emplace_back(between(breaks[i - 1], breaks[i]));
    out.push_back(breaks[i]);
  }
  if (!hi) out.emplace_back(Rational(breaks.back().interval().hi + 1));
  return out;
}

UPoly restrict_to_var(const Polynomial& p, std::size_t keep, std::span<const Rational> values) {
  std::map<std::size_t, Rational> a;
  for (std::size_t v = 0, k = 0; v < p.ring().size(); ++v)
    if (v != keep) a[v] = values[k++];
  return UPoly::from_polynomial(p.substitute(a), keep);
}

// Slice positions for variable 1 in two variables, from the projection of
// the family onto that variable. Returns false when the positions are not
// guaranteed to meet every cell.
bool projection_slices(std::span<const Polynomial> family, const Box& box, std::vector<Rational>& slices) {
  bool complete = true;
  std::vector<UPoly> proj;
  auto add = [&](const Polynomial& q) {
    if (q.is_zero() || q.is_constant()) return;
    proj.push_back(UPoly::from_polynomial(q, 1));
  };
  std::vector<const Polynomial*> in_x;
  for (const auto& p : family) {
    if (p.degree_in(0) <= 0) {
      add(p);
      continue;
    }
    in_x.push_back(&p);
    add(p.leading_coefficient_in(0));
    if (p.degree_in(1) > 0 && p.degree_in(0) >= 2) {
      const Polynomial disc = resultant(p, p.derivative(0), 0);
      if (disc.is_zero()) complete = false;
      add(disc);
    }
    for (const auto& bound : {box.lo[0], box.hi[0]})
      if (bound) add(p.substitute({{0, *bound}}));
  }
  for (std::size_t i = 0; i < in_x.size(); ++i)
    for (std::size_t j = i + 1; j < in_x.size(); ++j) {
      const Polynomial r = resultant(*in_x[i], *in_x[j], 0);
      if (r.is_zero() && (in_x[i]->degree_in(1) > 0 || in_x[j]->degree_in(1) > 0)) complete = false;
      add(r);
    }
  for (auto& s : line_samples(proj, box.lo[1], box.hi[1])) {
    if (s.exact())
      slices.push_back(s.interval().lo);
    else
      complete = false;
  }
  return complete;
}

}  // namespace

SampledCellSet sample_sign_conditions(std::span<const Polynomial> family, Ring ring, const Box& box,
                                      std::size_t budget) {
  if (budget == 0) throw std::invalid_argument("sampling budget must be positive");
  const std::size_t k = ring.size();
  if (k == 0) throw std::invalid_argument("sampling needs at least one variable");
  if (box.dim() != k || box.hi.size() != k) throw std::invalid_argument("box dimension does not match the ring");
  for (std::size_t v = 0; v < k; ++v)
    if (box.lo[v] && box.hi[v] && *box.lo[v] > *box.hi[v]) throw std::invalid_argument("empty box");
  for (const auto& p : family)
    if (!(p.ring() == ring)) throw std::invalid_argument("family polynomial from a different ring");

  SampledCellSet out;
  out.complete = k <= 2;
  std::vector<std::vector<Rational>> slices;
  if (k == 1) {
    slices.push_back({});
  } else {
    if (k == 2) {
      std::vector<Rational> ys;
      out.complete = projection_slices(family, box, ys);
      for (auto& y : ys) slices.push_back({y});
    } else {
      // Small lattice around the origin; Halton points alone tend to miss compact sets there.
      const std::array<Rational, 5> anchors{Rational(0), ratio(1, 2), ratio(-1, 2), Rational(1), Rational(-1)};
      std::vector<std::size_t> digit(k - 1, 0);
      for (bool more = true; more;) {
        std::vector<Rational> pt;
        for (std::size_t v = 1; v < k; ++v) {
          const auto [a, b] = sample_range(box, v);
          const Rational& c = anchors[digit[v - 1]];
          pt.push_back(c < a ? a : (c > b ? b : c));
        }
        slices.push_back(std::move(pt));
        more = false;
        for (auto& d : digit)
          if (++d < anchors.size()) {
            more = true;
            break;
          } else {
            d = 0;
          }
      }
    }
    for (std::size_t i = 1; i <= budget; ++i) {
      std::vector<Rational> pt;
      for (std::size_t v = 1; v < k; ++v) {
        const auto [a, b] = sample_range(box, v);
        pt.push_back(a + (b - a) * radical_inverse(i, kPrimes[(v - 1) % std::size(kPrimes)]));
      }
      slices.push_back(std::move(pt));
    }
  }

  std::map<SignCondition, Witness> found;
  for (const auto& slice : slices) {
    std::vector<UPoly> restricted;
    for (const auto& p : family) restricted.push_back(restrict_to_var(p, 0, slice));
    for (auto& x : line_samples(restricted, box.lo[0], box.hi[0])) {
      Witness w;
      w.coords.push_back(x.approximation());
      w.coords.insert(w.coords.end(), slice.begin(), slice.end());
      SignCondition sc;
      if (x.exact()) {
        w.coords[0] = x.interval().lo;
        for (const auto& q : restricted) sc.signs.push_back(q.sign_at(w.coords[0]));
      } else {
        for (const auto& q : restricted) sc.signs.push_back(x.sign_of(q));
        w.algebraic = x;
      }
      auto it = found.find(sc);
      if (it == found.end())
        found.emplace(std::move(sc), std::move(w));
      else if (!it->second.is_rational() && w.is_rational())
        it->second = std::move(w);
    }
  }
  for (auto& [sc, w] : found) out.cells.push_back({std::move(w), sc});
  return out;
}

}  // namespace semifib
