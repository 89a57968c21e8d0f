#include "semifib/interval.hpp"

#include <stdexcept>

namespace semifib {

Interval enclose_shifted(const Polynomial& shifted, std::span<const Rational> radius) {
  if (radius.size() != shifted.ring().size()) throw std::invalid_argument("enclosure radius has the wrong dimension");
  Rational c = 0;
  Rational r = 0;
  for (const auto& [e, a] : shifted.terms()) {
    if (total_degree(e) == 0) {
      c = a;
      continue;
    }
    Rational t = abs(a);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] > 0) t *= pow(radius[v], e[v]);
    r += t;
  }
  return {c - r, c + r};
}

Interval enclose(const Polynomial& p, std::span<const Rational> center, std::span<const Rational> radius) {
  return enclose_shifted(p.shift(center), radius);
}

}  // namespace semifib
