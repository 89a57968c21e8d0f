#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semifib/eliminate.hpp"
#include "semifib/fiber.hpp"
#include "semifib/perturb.hpp"

namespace semifib {

struct ParameterCell {
  std::optional<Rational> left;   // unset: -infinity
  std::optional<Rational> right;  // unset: +infinity
  Rational sample;
};

// k roots give k + 1 cells; samples are midpoints between neighbouring root
// hulls and hull -+ 1 on the unbounded ends. Throws on overlapping hulls.
std::vector<ParameterCell> components_complement(const DiscriminantSet& g);

// Three distinct points strictly inside the cell (the sample among them).
std::vector<Rational> interior_probes(const ParameterCell& cell);

struct FiberReport {
  Rational sample;
  std::size_t b0 = 0;            // fibre of the input set S
  std::size_t b0_perturbed = 0;  // fibre of the closed perturbation S'
  FiberMethod method = FiberMethod::ExactUnivariate;
  std::optional<Rational> resolution;
};

std::size_t fiber_b0(const DefinedSet& set, const Rational& y, FiberMethod method, const GridOptions& grid = {});

struct AtlasInput {
  Ring ring;
  std::vector<Polynomial> base;
  // Exactly one of the two describes S.
  std::optional<std::vector<SignCondition>> sigma;
  std::optional<Formula> formula;
  bool boxed = false;
  Rational omega{1 << 20};
};

struct AtlasOptions {
  Rational delta{1, 64};
  unsigned refine_rounds = 3;
  FiberMethod method = FiberMethod::ExactUnivariate;
  GridOptions grid;
  std::size_t sample_budget = 16;
  bool check_genericity = true;
};

// One pass of the pipeline at a fixed delta.
struct AtlasRun {
  Rational delta;
  std::size_t members_used = 0;
  std::size_t strata = 0;
  std::size_t systems = 0;
  std::size_t genericity_checked = 0;
  std::size_t genericity_failures = 0;
  DiscriminantSet g;
  std::vector<ParameterCell> cells;
  std::vector<FiberReport> fibers;
  Formula s_prime;
  DefinedSet s_prime_set;  // compacted
  std::vector<CriticalSystem> critical;
};

struct AtlasReport {
  std::vector<ParameterCell> cells;
  std::vector<FiberReport> fibers;
  std::size_t distinct_signatures = 0;
  Rational delta_used;
  bool stabilization = false;

  // Provenance of the run.
  DefinedSet input;                    // S over the (possibly boxed) base family
  std::vector<SignCondition> sigma;    // Sigma_S actually used
  bool sigma_complete = false;         // realizable list provably complete
  DiscriminantSet g;
  std::size_t members_used = 0;
  std::size_t strata = 0;
  std::size_t systems = 0;
  std::size_t genericity_checked = 0;
  std::size_t genericity_failures = 0;
  std::vector<Rational> deltas_tried;
  std::vector<std::string> notes;
  DefinedSet s_prime;  // closed perturbation at delta_used, compacted
  std::vector<CriticalSystem> critical;
};

// S as a set over the input ring, with the bounding box when requested.
DefinedSet input_set(const AtlasInput& in);

AtlasRun run_atlas_once(const DefinedSet& s, std::span<const SignCondition> sigma,
                        std::span<const SignCondition> realizable, const Rational& delta, const AtlasOptions& opts);

// Full pipeline with delta refinement. Throws DegenerateInput when every
// round degenerates, std::invalid_argument for unsupported input.
AtlasReport run_atlas(const AtlasInput& in, const AtlasOptions& opts = {});

}  // namespace semifib
