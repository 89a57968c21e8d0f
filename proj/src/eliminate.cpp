#include "semifib/eliminate.hpp"

#include <algorithm>

#include "semifib/matrix.hpp"

namespace semifib {

namespace {

void add_unique(std::vector<Polynomial>& set, Polynomial p) {
  if (p.is_zero()) return;
  if (std::find(set.begin(), set.end(), p) == set.end()) set.push_back(std::move(p));
}

}  // namespace

std::vector<Polynomial> project_system(const CriticalSystem& cs) {
  if (cs.active.empty()) throw std::invalid_argument("projection of an empty system");
  const Ring ring = cs.active.front().ring();
  std::vector<Polynomial> current;
  for (auto& p : cs.equations()) add_unique(current, p);
  bool lost = current.empty();
  for (std::size_t v = 0; v < ring.m && !lost; ++v) {
    std::vector<Polynomial> free, dep;
    for (auto& p : current) (p.degree_in(v) > 0 ? dep : free).push_back(p);
    if (dep.empty()) continue;
    // Pivot: lowest degree in v, then fewest terms; resultants against it.
    const auto pivot_it = std::min_element(dep.begin(), dep.end(), [&](const Polynomial& a, const Polynomial& b) {
      if (a.degree_in(v) != b.degree_in(v)) return a.degree_in(v) < b.degree_in(v);
      return a.terms().size() < b.terms().size();
    });
    const Polynomial pivot = *pivot_it;
    dep.erase(pivot_it);
    // A lone equation in v constrains nothing after projection.
    for (const auto& q : dep) add_unique(free, resultant(pivot, q, v));
    current = std::move(free);
    lost = current.empty();
  }
  if (lost) throw DegenerateInput("every eliminant vanishes identically");
  // All survivors vanish on the projection: keep their common part when
  // they are univariate in one parameter, the whole list otherwise.
  std::vector<Polynomial> out;
  bool univariate = ring.n == 1;
  for (const auto& p : current)
    for (std::size_t v = 0; v < ring.m; ++v)
      if (p.degree_in(v) > 0) throw std::logic_error("elimination left a fibre variable");
  if (univariate) {
    UPoly g;
    for (const auto& p : current) g = gcd(g, UPoly::from_polynomial(p, ring.m));
    out.push_back(g.to_polynomial(ring, ring.m));
  } else {
    out = current;
  }
  if (ring.m == 1)
    for (const auto& a : cs.active)
      if (Polynomial lc = a.leading_coefficient_in(0); !lc.is_constant()) add_unique(out, std::move(lc));
  return out;
}

DiscriminantSet assemble_G_from(std::vector<UPoly> polys) {
  DiscriminantSet g;
  for (auto& p : polys) {
    if (p.is_zero() || p.degree() <= 0) continue;
    UPoly f = square_free_part(p);
    if (std::find(g.defining.begin(), g.defining.end(), f) == g.defining.end()) g.defining.push_back(std::move(f));
  }
  for (auto& r : merged_real_roots(g.defining)) g.roots.push_back({std::move(r.value), std::move(r.polys)});
  return g;
}

DiscriminantSet assemble_G(std::span<const CriticalSystem> systems, Ring ring) {
  if (ring.n != 1) throw std::invalid_argument("exact discriminant needs a single parameter");
  std::vector<UPoly> polys;
  for (const auto& cs : systems)
    for (const auto& p : project_system(cs)) {
      if (p.is_zero() || p.is_constant()) continue;
      polys.push_back(UPoly::from_polynomial(p, ring.m));
    }
  return assemble_G_from(std::move(polys));
}

}  // namespace semifib
