#include "semifib/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace semifib {
namespace {

void isolate_in(const UPoly& f, const Rational& a, const Rational& b, std::vector<RootInterval>& out) {
  const int v = descartes_bound(f, a, b);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({a, b});
    return;
  }
  const Rational mid = (a + b) / 2;
  isolate_in(f, a, mid, out);
  if (f.sign_at(mid) == 0) out.push_back({mid, mid});
  isolate_in(f, mid, b, out);
}

// Shrinks an interval holding exactly one root until neither endpoint is a root.
RootInterval clear_endpoints(const UPoly& f, RootInterval iv) {
  while (!iv.exact() && (f.sign_at(iv.lo) == 0 || f.sign_at(iv.hi) == 0)) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    if (f.sign_at(mid) == 0) return {mid, mid};
    if (descartes_bound(f, iv.lo, mid) == 1)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
  return iv;
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot isolate roots of the zero polynomial");
  if (!is_square_free(f)) throw std::invalid_argument("root isolation needs a square-free polynomial");
  std::vector<RootInterval> out;
  if (f.degree() == 0) return out;
  const Rational bound = root_bound(f);
  isolate_in(f, -bound, 0, out);
  if (f.sign_at(0) == 0) out.push_back({0, 0});
  isolate_in(f, 0, bound, out);
  for (auto& iv : out) {
    iv = clear_endpoints(f, iv);
    // Unit width keeps the reported intervals readable.
    if (!iv.exact() && iv.hi - iv.lo > 1) {
      RealAlgebraic r(f, iv);
      r.refine_below(Rational(3, 2));
      iv = r.interval();
    }
  }
  return out;
}

RealAlgebraic::RealAlgebraic(UPoly defining, RootInterval interval) : f_(std::move(defining)), iv_(std::move(interval)) {
  if (!iv_.exact()) {
    sign_lo_ = f_.sign_at(iv_.lo);
    if (sign_lo_ == 0 || sign_lo_ == f_.sign_at(iv_.hi))
      throw std::invalid_argument("interval does not isolate a simple root");
  }
}

RealAlgebraic::RealAlgebraic(const Rational& value)
    : f_(std::vector<Rational>{-value, Rational(1)}), iv_{value, value} {}

void RealAlgebraic::refine() {
  if (exact()) return;
  const Rational mid = approximation();
  const int s = f_.sign_at(mid);
  if (s == 0)
    iv_ = {mid, mid};
  else if (s == sign_lo_)
    iv_.lo = mid;
  else
    iv_.hi = mid;
}

void RealAlgebraic::refine_below(const Rational& width) {
  while (!exact() && iv_.hi - iv_.lo >= width) refine();
}

int RealAlgebraic::sign_of(const UPoly& g) {
  if (g.is_zero()) return 0;
  if (exact()) return g.sign_at(iv_.lo);
  const UPoly h = gcd(f_, g);
  // h divides f, so it has at most the one root of f inside the interval,
  // and it is nonzero at the endpoints.
  if (h.degree() > 0 && h.sign_at(iv_.lo) * h.sign_at(iv_.hi) < 0) return 0;
  for (;;) {
    if (descartes_bound(g, iv_.lo, iv_.hi) == 0) return g.sign_at(approximation());
    refine();
    if (exact()) return g.sign_at(iv_.lo);
  }
}

int compare(RealAlgebraic& a, const Rational& q) {
  for (;;) {
    const auto& iv = a.interval();
    if (a.exact()) return sign(iv.lo - q);
    if (q <= iv.lo) return 1;
    if (q >= iv.hi) return -1;
    // The interval holds exactly one root of the defining polynomial.
    if (a.defining().sign_at(q) == 0) return 0;
    a.refine();
  }
}

int compare(RealAlgebraic& a, RealAlgebraic& b) {
  bool tested_equal = false;
  for (;;) {
    if (a.exact()) return -compare(b, a.interval().lo);
    if (b.exact()) return compare(a, b.interval().lo);
    const auto& ia = a.interval();
    const auto& ib = b.interval();
    if (ia.hi <= ib.lo) return -1;
    if (ib.hi <= ia.lo) return 1;
    if (!tested_equal) {
      // Common roots are roots of the gcd; inside the overlap it has at most
      // one (simple) root, and it is nonzero at the overlap endpoints since
      // each endpoint belongs to one of the isolating intervals.
      const Rational lo = std::max(ia.lo, ib.lo);
      const Rational hi = std::min(ia.hi, ib.hi);
      const UPoly h = gcd(a.defining(), b.defining());
      if (h.degree() > 0 && h.sign_at(lo) * h.sign_at(hi) < 0) return 0;
      tested_equal = true;
    }
    a.refine();
    b.refine();
  }
}

std::vector<MergedRoot> merged_real_roots(const std::vector<UPoly>& polys) {
  std::vector<MergedRoot> roots;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (polys[k].is_zero() || polys[k].degree() <= 0) continue;
    const UPoly f = square_free_part(polys[k]);
    for (const auto& iv : isolate_real_roots(f)) roots.push_back({RealAlgebraic(f, iv), {k}});
  }
  // Insertion sort keeps the number of refinements small for short lists and
  // merges equal values as they are found.
  std::vector<MergedRoot> sorted;
  for (auto& r : roots) {
    std::size_t pos = 0;
    bool merged = false;
    std::size_t lo = 0, hi = sorted.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const int c = compare(r.value, sorted[mid].value);
      if (c == 0) {
        sorted[mid].polys.push_back(r.polys.front());
        merged = true;
        break;
      }
      if (c < 0)
        hi = mid;
      else
        lo = mid + 1;
    }
    if (merged) continue;
    pos = lo;
    sorted.insert(sorted.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
  }
  for (auto& r : sorted) std::sort(r.polys.begin(), r.polys.end());
  // Strict separation of neighbouring hulls.
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    auto& a = sorted[i].value;
    auto& b = sorted[i + 1].value;
    while (!(a.interval().hi < b.interval().lo)) {
      a.refine();
      b.refine();
    }
  }
  return sorted;
}

}  // namespace semifib
