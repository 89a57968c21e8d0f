#pragma once

#include <cstddef>
#include <optional>

#include "semifib/formula.hpp"

namespace semifib {

enum class FiberMethod { ExactUnivariate, GridOracle };

struct GridOptions {
  Rational resolution{1, 1024};
  // Bisection depth below the base grid for cells the enclosure cannot
  // decide (one fibre variable).
  unsigned max_depth = 400;
  // Extra subdivision levels per base cell with several fibre variables.
  unsigned extra_levels = 3;
  // Half-width of the search window with several fibre variables; with one
  // fibre variable the window is derived from root bounds.
  Rational window{4};
  // Coarsest cell width allowed with several fibre variables; the uniform
  // grid there uses max(resolution, multi_resolution).
  Rational multi_resolution{1, 16};
  // Undecided cells at the finest level count as part of the set.
  bool unknown_as_true = true;
};

// Number of connected components of { x : (x, y) in set }, where the single
// parameter is the last variable. Exact mode needs one fibre variable.
std::size_t exact_fiber_b0(const DefinedSet& set, const Rational& y);
std::size_t grid_fiber_b0(const DefinedSet& set, const Rational& y, const GridOptions& opts = {});
// Base cell width actually used for m fibre variables.
Rational effective_resolution(const GridOptions& opts, std::size_t m);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace semifib
