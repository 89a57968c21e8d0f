#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "semifib/critical.hpp"
#include "semifib/roots.hpp"
#include "semifib/upoly.hpp"

namespace semifib {

// Raised when elimination loses all information (every eliminant vanishes
// identically); the pipeline answers by shrinking delta.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomials in the Y-block vanishing on the projection of the system's
// common zeros (a superset description). X1 is eliminated first.
std::vector<Polynomial> project_system(const CriticalSystem& cs);

struct DiscriminantRoot {
  RealAlgebraic value;
  std::vector<std::size_t> defining;  // indices into DiscriminantSet::defining
};

struct DiscriminantSet {
  enum class Mode { ExactN1, Approximate };
  std::vector<UPoly> defining;  // square-free, primitive, pairwise distinct
  std::vector<DiscriminantRoot> roots;  // sorted, hulls strictly separated
  Mode mode = Mode::ExactN1;
};

// Union of the projections, square-freed, merged and isolated. Requires a
// single parameter (n = 1); throws std::invalid_argument otherwise.
DiscriminantSet assemble_G(std::span<const CriticalSystem> systems, Ring ring);
DiscriminantSet assemble_G_from(std::vector<UPoly> polys);

}  // namespace semifib
