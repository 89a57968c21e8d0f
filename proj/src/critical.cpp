#include "semifib/critical.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "semifib/matrix.hpp"

namespace semifib {

std::vector<Stratum> enumerate_strata(const PerturbedFamily& pf, std::size_t max_level,
                                      std::span<const std::size_t> candidates) {
  const Ring ring = pf.ring();
  if (max_level > ring.size()) throw std::invalid_argument("stratum level above m + n");
  std::vector<std::size_t> pool(candidates.begin(), candidates.end());
  if (pool.empty())
    for (std::size_t k = 0; k < pf.member_count(); ++k) pool.push_back(k);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<Stratum> out;
  for (std::size_t level = 0; level <= max_level; ++level) {
    Stratum current;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
      if (current.size() == level) {
        out.push_back(current);
        return;
      }
      for (std::size_t k = from; k < pool.size(); ++k) {
        const std::size_t j = pf.member(pool[k]).j;
        if (std::any_of(current.begin(), current.end(), [&](std::size_t c) { return pf.member(c).j == j; })) continue;
        current.push_back(pool[k]);
        grow(k + 1);
        current.pop_back();
      }
    };
    grow(0);
  }
  return out;
}

std::vector<Polynomial> CriticalSystem::equations() const {
  std::vector<Polynomial> out = active;
  out.insert(out.end(), minors.begin(), minors.end());
  return out;
}

CriticalSystem critical_system(std::vector<Polynomial> active, std::size_t m, Stratum stratum) {
  if (active.empty()) throw std::invalid_argument("critical system of a level-0 stratum");
  const Ring ring = active.front().ring();
  if (m > ring.m) throw std::invalid_argument("more fibre variables than the ring has");
  CriticalSystem cs;
  cs.stratum = std::move(stratum);
  const std::size_t level = active.size();
  cs.active = std::move(active);
  if (level > m) {
    cs.kind = CriticalSystem::Kind::C2;
    return cs;
  }
  cs.kind = CriticalSystem::Kind::C1;
  PolyMatrix jac(ring, level, m);
  for (std::size_t r = 0; r < level; ++r)
    for (std::size_t c = 0; c < m; ++c) jac.at(r, c) = partial_derivative(cs.active[r], c);
  std::vector<std::size_t> rows(level);
  for (std::size_t r = 0; r < level; ++r) rows[r] = r;
  // Column subsets in lexicographic order.
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(level), true);
  do {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < m; ++c)
      if (pick[c]) cols.push_back(c);
    cs.minors.push_back(determinant(jac.submatrix(rows, cols)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return cs;
}

CriticalSystem critical_system(const PerturbedFamily& pf, const Stratum& stratum) {
  std::vector<Polynomial> active;
  for (std::size_t k : stratum) active.push_back(pf.member_polynomial(k));
  return critical_system(std::move(active), pf.ring().m, stratum);
}

std::string kind_name(CriticalSystem::Kind k) { return k == CriticalSystem::Kind::C1 ? "C1" : "C2"; }

}  // namespace semifib
