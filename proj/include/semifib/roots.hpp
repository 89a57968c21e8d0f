#pragma once

#include <vector>

#include "semifib/upoly.hpp"

namespace semifib {

// Isolating interval. lo == hi marks an exactly known rational root;
// otherwise the root lies in the open interval (lo, hi) and the defining
// polynomial is nonzero at both endpoints with opposite signs.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  bool operator==(const RootInterval&) const = default;
};

// Descartes bisection. Precondition: f nonzero and square-free (throws
// std::invalid_argument otherwise). Result is sorted and pairwise disjoint.
std::vector<RootInterval> isolate_real_roots(const UPoly& f);

/// A real algebraic number: the unique root of a square-free polynomial
/// inside an isolating interval.
class RealAlgebraic {
 public:
  RealAlgebraic(UPoly defining, RootInterval interval);
  explicit RealAlgebraic(const Rational& value);

  const UPoly& defining() const { return f_; }
  const RootInterval& interval() const { return iv_; }
  bool exact() const { return iv_.exact(); }
  // Midpoint of the current interval (the value itself when exact).
  Rational approximation() const { return (iv_.lo + iv_.hi) / 2; }

  // Halves the interval (or lands on the root exactly).
  void refine();
  void refine_below(const Rational& width);
  // Exact sign of g at this number.
  int sign_of(const UPoly& g);

 private:
  UPoly f_;
  RootInterval iv_;
  int sign_lo_ = 0;
};

// Total order with exact equality; refines both operands as needed.
int compare(RealAlgebraic& a, RealAlgebraic& b);
int compare(RealAlgebraic& a, const Rational& q);

// Distinct real roots of several polynomials, merged into one sorted list.
struct MergedRoot {
  RealAlgebraic value;
  std::vector<std::size_t> polys;  // indices of the inputs vanishing here
};
// Inputs may be zero (ignored) or constant. Neighbouring hulls of the result
// are strictly separated.
std::vector<MergedRoot> merged_real_roots(const std::vector<UPoly>& polys);

}  // namespace semifib
