#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "semifib/formula.hpp"
#include "semifib/polynomial.hpp"
#include "semifib/roots.hpp"

namespace semifib {

/// Sign vector over a family, entry i for family member i.
struct SignCondition {
  std::vector<int> signs;

  std::size_t size() const { return signs.size(); }
  std::size_t level() const;
  std::vector<std::size_t> zero_indices() const;
  bool operator==(const SignCondition&) const = default;
  auto operator<=>(const SignCondition&) const = default;
};

// sign(P_i) = sigma_i for every i; atoms index the family positions.
Formula realization_formula(const SignCondition& sc);
// P_i = 0 for the zero entries only; true when there are none.
Formula zset_formula(const SignCondition& sc);

/// Sample point. When `algebraic` is set, coordinate 0 is that real
/// algebraic number and coords[0] only holds an approximation.
struct Witness {
  std::vector<Rational> coords;
  std::optional<RealAlgebraic> algebraic;

  bool is_rational() const { return !algebraic.has_value(); }
};

// Exact signs of each family member at the witness.
std::vector<int> signs_at(std::span<const Polynomial> family, Witness& w);

/// Closed axis-aligned box; a missing bound is unbounded on that side.
struct Box {
  std::vector<std::optional<Rational>> lo;
  std::vector<std::optional<Rational>> hi;

  static Box unbounded(std::size_t dim);
  static Box cube(std::size_t dim, const Rational& lo, const Rational& hi);
  std::size_t dim() const { return lo.size(); }
  bool contains(std::span<const Rational> point) const;
};

struct SampledCell {
  Witness witness;
  SignCondition condition;
};

struct SampledCellSet {
  std::vector<SampledCell> cells;  // sorted by sign vector, one per condition
  bool complete = false;           // every realizable condition in the box is present
};

// Univariate slices along variable 0 enumerate exactly; the slice positions
// come from projection roots (two variables) plus `budget` quasi-random
// points. `complete` is set only when the enumeration is provably complete.
SampledCellSet sample_sign_conditions(std::span<const Polynomial> family, Ring ring, const Box& box,
                                      std::size_t budget);

}  // namespace semifib
