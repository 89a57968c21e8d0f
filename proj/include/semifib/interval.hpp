#pragma once

#include <span>

#include "semifib/polynomial.hpp"

namespace semifib {

struct Interval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  // -1 or +1 when the whole interval has that strict sign, 0 otherwise.
  int certain_sign() const { return lo > 0 ? 1 : (hi < 0 ? -1 : 0); }
};

// Centered-form enclosure of p over the box center +- radius (one radius
// per variable): p is expanded at the center and every non-constant term
// contributes |a| * prod radius^e.
Interval enclose(const Polynomial& p, std::span<const Rational> center, std::span<const Rational> radius);

// Same with the expansion at the center already computed (p(X + center)).
Interval enclose_shifted(const Polynomial& shifted, std::span<const Rational> radius);

}  // namespace semifib
