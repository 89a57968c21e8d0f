#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semifib/formula.hpp"
#include "semifib/polynomial.hpp"

namespace semifib {

// Scaled monomial product coef * X^x * prod Q_i^q[i].
struct ProductTerm {
  Rational coef;
  Exponents x;
  std::vector<unsigned> q;
};

// Q_index = left + right, where both sides only mention Q_i with i < index.
struct SLPStep {
  std::size_t index = 0;  // 0-based
  ProductTerm left;
  ProductTerm right;
};

/// Straight-line program with one step per non-absorbable addition.
struct SLPProgram {
  std::size_t m = 0;
  std::vector<SLPStep> steps;
  ProductTerm final;

  std::size_t a() const { return steps.size(); }
};

// Each binary + or - whose operands are not scalar multiples of the same
// monomial product becomes one step. The step count is an upper bound on the
// additive complexity, never a minimum. Only X variables are accepted; m is
// inferred when not given.
SLPProgram parse_slp(std::string_view text, std::optional<std::size_t> m = std::nullopt);

// Number of + and - symbols in the source text.
std::size_t count_additive_tokens(std::string_view text);

// Expanded values of Q_1..Q_a in the ring (m, 0).
std::vector<Polynomial> expand_steps(const SLPProgram& prog);
Polynomial expand(const SLPProgram& prog);

std::string describe(const SLPProgram& prog);

struct LiftVariable {
  std::size_t program;  // k, 0-based
  std::size_t step;     // j, 0-based
};

/// Lift of a formula over SLP-defined polynomials to trinomial equations.
///
/// Ring (m, a): Y-block variable t is lift_variables[t]. atoms[k] is the final
/// monomial of program k; rewritten_formula indexes atoms.
struct LiftedSystem {
  Ring ring;
  std::vector<LiftVariable> lift_variables;
  std::vector<Polynomial> equations;
  std::vector<Polynomial> atoms;
  Formula rewritten_formula;

  std::size_t m() const { return ring.m; }
  std::size_t a() const { return ring.n; }
  std::vector<std::string> variable_names() const;  // X1.., Y_k_j (1-based k, j)
  std::size_t offset(std::size_t program) const;    // first Y-block index of program
  // Family = atoms then equations; formula = rewritten_formula and every equation = 0.
  DefinedSet defined_set() const;
};

LiftedSystem lift(const std::vector<SLPProgram>& progs, const Formula& formula);

struct LiftSample {
  std::vector<Rational> x;
  std::vector<Rational> y;
  bool original = false;
  bool lifted = false;
  bool equations_hold = false;
};

struct LiftReport {
  bool symbolic_ok = true;
  std::vector<std::size_t> symbolic_failures;  // programs whose atom did not round-trip
  std::vector<std::size_t> equation_failures;  // equations not identically zero after substitution
  bool triangular = true;                      // every Y is an explicit function of x and earlier Y
  std::vector<LiftSample> samples;
  std::size_t sample_failures = 0;

  bool passed() const { return symbolic_ok && triangular && sample_failures == 0; }
};

LiftReport verify_lift(const LiftedSystem& ls, const std::vector<SLPProgram>& progs, const Formula& formula,
                       std::size_t sample_count = 24, unsigned long seed = 1);

// Y values of the unique lift of x (concatenated per program).
std::vector<Rational> lift_point(const std::vector<SLPProgram>& progs, std::span<const Rational> x);

}  // namespace semifib
