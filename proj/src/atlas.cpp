#include "semifib/atlas.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace semifib {

std::vector<ParameterCell> components_complement(const DiscriminantSet& g) {
  if (g.mode != DiscriminantSet::Mode::ExactN1) throw std::invalid_argument("cells need an exact discriminant");
  const auto& r = g.roots;
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    if (!(r[i].value.interval().hi < r[i + 1].value.interval().lo))
      throw std::invalid_argument("overlapping root intervals");
  std::vector<ParameterCell> cells;
  if (r.empty()) {
    cells.push_back({std::nullopt, std::nullopt, Rational(0)});
    return cells;
  }
  const Rational first = r.front().value.interval().lo;
  cells.push_back({std::nullopt, first, first - 1});
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const Rational a = r[i].value.interval().hi;
    const Rational b = r[i + 1].value.interval().lo;
    cells.push_back({a, b, (a + b) / 2});
  }
  const Rational last = r.back().value.interval().hi;
  cells.push_back({last, std::nullopt, last + 1});
  return cells;
}

std::vector<Rational> interior_probes(const ParameterCell& cell) {
  if (cell.left && cell.right) {
    const Rational w = *cell.right - *cell.left;
    return {*cell.left + w / 4, cell.sample, *cell.left + 3 * w / 4};
  }
  if (cell.right) return {*cell.right - 2, cell.sample, *cell.right - Rational(1, 2)};
  if (cell.left) return {*cell.left + Rational(1, 2), cell.sample, *cell.left + 2};
  return {Rational(-1), cell.sample, Rational(1)};
}

std::size_t fiber_b0(const DefinedSet& set, const Rational& y, FiberMethod method, const GridOptions& grid) {
  if (method == FiberMethod::ExactUnivariate) return exact_fiber_b0(set, y);
  return grid_fiber_b0(set, y, grid);
}

DefinedSet input_set(const AtlasInput& in) {
  DefinedSet s{in.ring, in.base, Formula::truth(false)};
  for (const auto& p : in.base)
    if (!(p.ring() == in.ring)) throw std::invalid_argument("family polynomial outside the declared ring");
  if (in.formula) {
    if (!in.formula->atom_indices().empty() && in.formula->max_index() >= in.base.size())
      throw std::invalid_argument("formula refers to a polynomial outside the family");
    s.formula = *in.formula;
  } else if (in.sigma) {
    std::vector<Formula> terms;
    for (const auto& sc : *in.sigma) {
      if (sc.size() != in.base.size()) throw std::invalid_argument("sign condition length differs from the family");
      terms.push_back(realization_formula(sc));
    }
    s.formula = Formula::disj(std::move(terms));
  } else {
    throw std::invalid_argument("the set needs a formula or sign conditions");
  }
  if (in.boxed) {
    if (in.omega <= 0) throw std::invalid_argument("omega must be positive");
    std::vector<Formula> parts{s.formula};
    for (std::size_t v = 0; v < in.ring.size(); ++v) {
      const Polynomial x = Polynomial::variable(in.ring, v);
      s.family.push_back(x - Polynomial::constant(in.ring, in.omega));
      parts.push_back(Formula::atom(s.family.size() - 1, Relation::Less));
      s.family.push_back(x + Polynomial::constant(in.ring, in.omega));
      parts.push_back(Formula::atom(s.family.size() - 1, Relation::Greater));
    }
    s.formula = Formula::conj(std::move(parts));
  }
  return s;
}

AtlasRun run_atlas_once(const DefinedSet& s, std::span<const SignCondition> sigma,
                        std::span<const SignCondition> realizable, const Rational& delta, const AtlasOptions& opts) {
  const Ring ring = s.ring;
  AtlasRun run;
  run.delta = delta;
  if (s.family.empty()) {
    // Nothing to perturb: S is all of space or empty.
    run.cells = components_complement(run.g);
    const std::size_t b0 = s.formula.kind() == Formula::Kind::True ? 1 : 0;
    run.s_prime = s.formula;
    run.s_prime_set = s;
    run.fibers.push_back({run.cells[0].sample, b0, b0, opts.method, std::nullopt});
    return run;
  }
  const PerturbedFamily pf(s.family, EpsilonLadder(s.family.size(), delta));
  const DefinedSet closed = construct_S_prime(sigma, realizable, pf).set;
  const auto used = closed.formula.atom_indices();
  run.members_used = used.size();
  run.s_prime = closed.formula;
  const std::vector<std::size_t> used_list(used.begin(), used.end());

  std::vector<CriticalSystem> systems;
  if (!used_list.empty()) {
    for (const auto& stratum : enumerate_strata(pf, ring.size(), used_list)) {
      if (stratum.empty()) continue;
      ++run.strata;
      systems.push_back(critical_system(pf, stratum));
    }
  }
  run.systems = systems.size();
  run.g = assemble_G(systems, ring);
  run.critical = systems;
  run.cells = components_complement(run.g);

  run.s_prime_set = closed.compact();
  const DefinedSet& s_prime = run.s_prime_set;
  const std::optional<Rational> res =
      opts.method == FiberMethod::GridOracle ? std::optional<Rational>(effective_resolution(opts.grid, ring.m)) : std::nullopt;
  for (const auto& cell : run.cells) {
    FiberReport f{cell.sample, fiber_b0(s, cell.sample, opts.method, opts.grid),
                  fiber_b0(s_prime, cell.sample, opts.method, opts.grid), opts.method, res};
    run.fibers.push_back(std::move(f));
  }

  if (opts.check_genericity && !s_prime.family.empty()) {
    auto sampled = sample_sign_conditions(s_prime.family, ring, Box::unbounded(ring.size()), opts.sample_budget);
    for (auto& cell : sampled.cells) {
      if (cell.condition.level() == 0) continue;
      std::vector<Witness> one{cell.witness};
      const RankReport rep = check_rank_genericity(s_prime.family, cell.condition, one);
      run.genericity_checked += rep.checked;
      run.genericity_failures += rep.failures.size();
    }
  }
  return run;
}

namespace {

std::vector<std::size_t> b0_multiset(const AtlasRun& run) {
  std::vector<std::size_t> out;
  for (const auto& f : run.fibers) out.push_back(f.b0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

AtlasReport run_atlas(const AtlasInput& in, const AtlasOptions& opts) {
  if (in.ring.n != 1) throw std::invalid_argument("the atlas needs exactly one parameter (n = 1)");
  if (in.ring.m < 1 || in.ring.m > 3) throw std::invalid_argument("the exact pipeline supports 1 <= m <= 3");
  if (opts.delta <= 0 || opts.delta >= 1) throw std::invalid_argument("delta must lie strictly between 0 and 1");
  AtlasOptions effective = opts;
  AtlasReport report;
  if (in.ring.m > 1 && opts.method == FiberMethod::ExactUnivariate) {
    effective.method = FiberMethod::GridOracle;
    report.notes.push_back("exact fibres need m = 1; fibres use the grid oracle");
  }
  report.input = input_set(in);
  const DefinedSet& s = report.input;

  std::vector<SignCondition> realizable;
  if (!s.family.empty()) {
    const auto sampled =
        sample_sign_conditions(s.family, s.ring, Box::unbounded(s.ring.size()), effective.sample_budget);
    for (const auto& c : sampled.cells) realizable.push_back(c.condition);
    report.sigma_complete = sampled.complete;
  } else {
    report.sigma_complete = true;
  }
  if (in.sigma && !in.boxed) {
    report.sigma = *in.sigma;
    for (const auto& sc : *in.sigma)
      if (std::find(realizable.begin(), realizable.end(), sc) == realizable.end()) realizable.push_back(sc);
  } else {
    for (const auto& sc : realizable)
      if (s.formula.eval(std::span<const int>(sc.signs))) report.sigma.push_back(sc);
  }
  if (!report.sigma_complete) report.notes.push_back("realizable sign conditions found by sampling; may be incomplete");

  std::optional<AtlasRun> prev, chosen;
  Rational delta = effective.delta;
  for (unsigned round = 0; round <= effective.refine_rounds; ++round, delta *= delta) {
    report.deltas_tried.push_back(delta);
    AtlasRun run;
    try {
      run = run_atlas_once(s, report.sigma, realizable, delta, effective);
    } catch (const DegenerateInput& e) {
      report.notes.push_back("delta " + to_string(delta) + ": " + e.what());
      prev.reset();
      continue;
    }
    if (run.genericity_failures > 0) {
      report.notes.push_back("delta " + to_string(delta) + ": rank genericity failed at " +
                             std::to_string(run.genericity_failures) + " witness(es)");
      prev.reset();
      if (!chosen) chosen = run;
      continue;
    }
    if (prev && prev->cells.size() == run.cells.size() && b0_multiset(*prev) == b0_multiset(run)) {
      report.stabilization = true;
      chosen = std::move(prev);
      break;
    }
    prev = std::move(run);
    chosen = prev;
  }
  if (!chosen) throw DegenerateInput("every delta in the refinement sequence degenerated");

  report.cells = chosen->cells;
  report.fibers = chosen->fibers;
  report.delta_used = chosen->delta;
  report.g = chosen->g;
  report.members_used = chosen->members_used;
  report.strata = chosen->strata;
  report.systems = chosen->systems;
  report.genericity_checked = chosen->genericity_checked;
  report.genericity_failures = chosen->genericity_failures;
  report.s_prime = chosen->s_prime_set;
  report.critical = chosen->critical;
  std::set<std::size_t> values;
  for (const auto& f : report.fibers) values.insert(f.b0);
  report.distinct_signatures = values.size();
  return report;
}

}  // namespace semifib
