#include "semifib/fiber.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "semifib/interval.hpp"
#include "semifib/roots.hpp"
#include "semifib/upoly.hpp"

namespace semifib {

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
}

namespace {

void require_single_parameter(const DefinedSet& set) {
  if (set.ring.n != 1) throw std::invalid_argument("fibres are taken over a single parameter");
}

// Restriction of every used atom to the fibre over y (others stay zero).
std::vector<Polynomial> restrict_family(const DefinedSet& set, const Rational& y) {
  std::vector<Polynomial> out(set.family.size(), Polynomial(set.ring));
  for (std::size_t k : set.formula.atom_indices()) out.at(k) = set.family.at(k).substitute({{set.ring.m, y}});
  return out;
}

std::size_t count_runs(const std::vector<bool>& pieces) {
  std::size_t runs = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i] && (i == 0 || !pieces[i - 1])) ++runs;
  return runs;
}

}  // namespace

std::size_t exact_fiber_b0(const DefinedSet& set, const Rational& y) {
  require_single_parameter(set);
  if (set.ring.m != 1) throw std::invalid_argument("exact fibres need exactly one fibre variable");
  const auto restricted = restrict_family(set, y);
  std::vector<UPoly> polys;
  for (const auto& p : restricted) polys.push_back(UPoly::from_polynomial(p, 0));
  auto roots = merged_real_roots(polys);

  auto truth_at = [&](const Rational& x) {
    std::vector<int> s;
    for (const auto& p : polys) s.push_back(p.sign_at(x));
    return std::pair{set.formula.eval(std::span<const int>(s)), s};
  };
  if (roots.empty()) return truth_at(0).first ? 1 : 0;

  // Pieces alternate: gap, root, gap, ..., root, gap.
  std::vector<Rational> gap_samples;
  gap_samples.push_back(roots.front().value.interval().lo - 1);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
    gap_samples.push_back((roots[i].value.interval().hi + roots[i + 1].value.interval().lo) / 2);
  gap_samples.push_back(roots.back().value.interval().hi + 1);

  std::vector<bool> pieces;
  for (std::size_t i = 0; i <= roots.size(); ++i) {
    auto [truth, s] = truth_at(gap_samples[i]);
    pieces.push_back(truth);
    if (i == roots.size()) break;
    // Members not vanishing at the root keep their sign from the next gap.
    auto [next_truth, next_signs] = truth_at(gap_samples[i + 1]);
    (void)next_truth;
    for (std::size_t k : roots[i].polys) next_signs[k] = 0;
    pieces.push_back(set.formula.eval(std::span<const int>(next_signs)));
  }
  return count_runs(pieces);
}

namespace {

std::uint8_t mask_of(const Interval& iv) {
  if (iv.lo > 0) return signs::Pos;
  if (iv.hi < 0) return signs::Neg;
  if (iv.lo == 0 && iv.hi == 0) return signs::Zero;
  std::uint8_t m = signs::Zero;
  if (iv.hi > 0) m |= signs::Pos;
  if (iv.lo < 0) m |= signs::Neg;
  return m;
}

std::size_t cell_count(const Rational& q) {
  BigInt n;
  mpz_cdiv_q(n.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (n > 100'000'000) throw std::invalid_argument("grid too fine for the oracle");
  return n.get_ui();
}

bool decided(std::uint8_t m) { return m == signs::Pos || m == signs::Neg || m == signs::Zero; }

// One fibre variable: adaptive bisection of [a, b] where only the atoms the
// enclosure cannot decide are carried down. Appends the truth values of the
// chain "open cell, vertex, open cell, ..." strictly inside [a, b].
struct Line {
  const Formula& formula;
  const std::vector<UPoly>& polys;
  unsigned max_depth;
  bool unknown_as_true;
  std::vector<bool>& out;

  std::vector<int> vertex_signs(const Rational& x) const {
    std::vector<int> s;
    for (const auto& p : polys) s.push_back(p.sign_at(x));
    return s;
  }

  void cell(const Rational& a, const Rational& b, std::vector<std::uint8_t> masks, const std::vector<int>& sa,
            const std::vector<int>& sb, unsigned depth) {
    const Rational c = (a + b) / 2;
    const Rational h = (b - a) / 2;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (decided(masks[k])) continue;
      const UPoly shifted = polys[k].taylor_shift(c);
      Rational r = 0;
      Rational hp = 1;
      for (int e = 1; e <= shifted.degree(); ++e) {
        hp *= h;
        r += abs(shifted[static_cast<std::size_t>(e)]) * hp;
      }
      const Rational c0 = shifted.is_zero() ? Rational(0) : shifted[0];
      masks[k] = mask_of({c0 - r, c0 + r});
      // The cell is open, so roots on its vertices do not matter.
      if (!decided(masks[k]) && descartes_bound(polys[k], a, b) == 0) masks[k] = signs::of(sign(c0));
    }
    const Truth t = formula.eval(std::span<const std::uint8_t>(masks));
    if (t != Truth::Unknown) {
      out.push_back(t == Truth::True);
      return;
    }
    if (depth >= max_depth) {
      leaf(masks, sa, sb);
      return;
    }
    const auto sc = vertex_signs(c);
    cell(a, c, masks, sa, sc, depth + 1);
    out.push_back(formula.eval(std::span<const int>(sc)));
    cell(c, b, masks, sc, sb, depth + 1);
  }

  // Smallest cell: every undecided atom has a root strictly inside; model
  // them as one common root between the two vertex signs.
  void leaf(const std::vector<std::uint8_t>& masks, const std::vector<int>& sa, const std::vector<int>& sb) {
    std::vector<int> left(polys.size()), mid(polys.size()), right(polys.size());
    for (std::size_t k = 0; k < polys.size(); ++k) {
      const int l = sa[k] != 0 ? sa[k] : sb[k];
      const int r = sb[k] != 0 ? sb[k] : sa[k];
      left[k] = l;
      right[k] = r;
      mid[k] = decided(masks[k]) ? l : 0;
    }
    const bool lt = formula.eval(std::span<const int>(left));
    const bool mt = formula.eval(std::span<const int>(mid));
    const bool rt = formula.eval(std::span<const int>(right));
    if (!unknown_as_true) {
      out.push_back(lt && mt && rt);
      return;
    }
    out.push_back(lt);
    out.push_back(mt);
    out.push_back(rt);
  }
};

}  // namespace

Rational effective_resolution(const GridOptions& opts, std::size_t m) {
  return m <= 1 ? opts.resolution : std::max(opts.resolution, opts.multi_resolution);
}

std::size_t grid_fiber_b0(const DefinedSet& set, const Rational& y, const GridOptions& opts) {
  require_single_parameter(set);
  if (opts.resolution <= 0) throw std::invalid_argument("grid resolution must be positive");
  const auto restricted = restrict_family(set, y);
  const std::size_t m = set.ring.m;

  if (m == 1) {
    std::vector<UPoly> polys;
    Rational window = 1;
    for (const auto& p : restricted) {
      polys.push_back(UPoly::from_polynomial(p, 0));
      if (polys.back().degree() > 0) window = std::max(window, root_bound(polys.back()));
    }
    // Top-down bisection of the window: a cell the enclosure decides would
    // only split into pieces with the same truth value, so this matches the
    // uniform grid of the given resolution while visiting far fewer cells.
    unsigned base_depth = 0;
    for (Rational width = 2 * window; width > opts.resolution; width /= 2) ++base_depth;
    std::vector<bool> chain;
    Line line{set.formula, polys, base_depth + opts.max_depth, opts.unknown_as_true, chain};
    // Beyond the window no member changes sign.
    chain.push_back(set.formula.eval(std::span<const int>(line.vertex_signs(-2 * window))));
    const auto lo = line.vertex_signs(-window);
    const auto hi = line.vertex_signs(window);
    chain.push_back(set.formula.eval(std::span<const int>(lo)));
    line.cell(-window, window, std::vector<std::uint8_t>(polys.size(), signs::Any), lo, hi, 0);
    chain.push_back(set.formula.eval(std::span<const int>(hi)));
    chain.push_back(set.formula.eval(std::span<const int>(line.vertex_signs(2 * window))));
    return count_runs(chain);
  }

  // Several fibre variables: uniform grid, adaptive enclosure per cell,
  // components over the 3^m - 1 neighbourhood.
  const Rational w = opts.window;
  const std::size_t per_axis = cell_count(2 * w / effective_resolution(opts, m));
  const Rational h = 2 * w / static_cast<long>(per_axis);
  std::size_t total = 1;
  for (std::size_t d = 0; d < m; ++d) total *= per_axis;
  if (total > 50'000'000) throw std::invalid_argument("grid too fine for the oracle");
  const Ring fibre_ring{m, 0};
  const auto used = set.formula.atom_indices();
  std::vector<Polynomial> polys(set.family.size(), Polynomial(fibre_ring));
  std::vector<std::size_t> keep(m);
  std::iota(keep.begin(), keep.end(), 0);
  for (std::size_t k : used) {
    // Drop the (now absent) parameter variable from the ring.
    Polynomial q(fibre_ring);
    for (const auto& [e, a] : restricted[k].terms()) q += Polynomial::monomial(fibre_ring, Exponents(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(m)), a);
    polys[k] = std::move(q);
  }

  std::function<Truth(const std::vector<Rational>&, const Rational&, std::vector<std::uint8_t>, unsigned)> classify =
      [&](const std::vector<Rational>& center, const Rational& half, std::vector<std::uint8_t> masks,
          unsigned level) -> Truth {
    const std::vector<Rational> radius(m, half);
    for (std::size_t k : used) {
      if (decided(masks[k])) continue;
      masks[k] = mask_of(enclose(polys[k], center, radius));
    }
    const Truth t = set.formula.eval(std::span<const std::uint8_t>(masks));
    if (t != Truth::Unknown || level >= opts.extra_levels) return t;
    bool unknown = false;
    for (std::size_t corner = 0; corner < (std::size_t{1} << m); ++corner) {
      std::vector<Rational> c = center;
      for (std::size_t d = 0; d < m; ++d) c[d] += (corner >> d & 1) ? Rational(half / 2) : Rational(-half / 2);
      const Truth sub = classify(c, half / 2, masks, level + 1);
      if (sub == Truth::True) return Truth::True;
      if (sub == Truth::Unknown) unknown = true;
    }
    return unknown ? Truth::Unknown : Truth::False;
  };

  std::vector<bool> inside(total, false);
  std::vector<std::size_t> idx(m, 0);
  for (std::size_t cell = 0; cell < total; ++cell) {
    std::vector<Rational> center(m);
    for (std::size_t d = 0, c = cell; d < m; ++d, c /= per_axis)
      center[d] = -w + h * static_cast<long>(c % per_axis) + h / 2;
    const Truth t = classify(center, h / 2, std::vector<std::uint8_t>(set.family.size(), signs::Any), 0);
    inside[cell] = t == Truth::True || (t == Truth::Unknown && opts.unknown_as_true);
  }
  UnionFind uf(total);
  for (std::size_t cell = 0; cell < total; ++cell) {
    if (!inside[cell]) continue;
    std::vector<long> coord(m);
    for (std::size_t d = 0, c = cell; d < m; ++d, c /= per_axis) coord[d] = static_cast<long>(c % per_axis);
    std::size_t neighbours = 1;
    for (std::size_t d = 0; d < m; ++d) neighbours *= 3;
    for (std::size_t code = 0; code < neighbours; ++code) {
      std::size_t other = 0, stride = 1;
      bool valid = true;
      for (std::size_t d = 0, c = code; d < m; ++d, c /= 3) {
        const long x = coord[d] + static_cast<long>(c % 3) - 1;
        if (x < 0 || x >= static_cast<long>(per_axis)) valid = false;
        other += static_cast<std::size_t>(x) * stride;
        stride *= per_axis;
      }
      if (valid && other != cell && inside[other]) uf.unite(cell, other);
    }
  }
  std::size_t components = 0;
  for (std::size_t cell = 0; cell < total; ++cell) components += inside[cell] && uf.find(cell) == cell;
  return components;
}

}  // namespace semifib
