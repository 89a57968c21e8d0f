#include <doctest.h>

#include <algorithm>
#include <set>

#include "semifib/atlas.hpp"
#include "semifib/bounds.hpp"
#include "semifib/problem.hpp"
#include "semifib/syntax.hpp"

using namespace semifib;

namespace {

const Ring R11{1, 1};

DefinedSet set_of(const char* formula, Ring ring = R11) {
  DefinedSet s{ring, {}, Formula::truth(true)};
  s.formula = parse_formula(formula, ring, s.family);
  return s;
}

std::multiset<std::size_t> b0_values(const AtlasReport& r) {
  std::multiset<std::size_t> out;
  for (const auto& f : r.fibers) out.insert(f.b0);
  return out;
}

AtlasInput problem_input(const char* text) {
  const ProblemFile pf = parse_problem(text);
  AtlasInput in{pf.ring, pf.polys, pf.sigma, pf.formula};
  return in;
}

// Independent fibre counts, read off the defining equations by hand.
std::size_t quadric_oracle(const Rational& y) { return y < 1 ? 2 : (y == 1 ? 1 : 0); }
std::size_t lines_oracle(const Rational& y) {
  std::size_t n = 0;
  for (int x : {1, 2}) n += (y >= 0 && x >= y);
  return n;
}

void check_constant_cells(const AtlasReport& r) {
  for (const auto& cell : r.cells) {
    const auto probes = interior_probes(cell);
    REQUIRE(probes.size() == 3);
    std::set<std::size_t> seen;
    for (const auto& y : probes) seen.insert(exact_fiber_b0(r.s_prime, y));
    CHECK_MESSAGE(seen.size() == 1, "cell sample " << to_string(cell.sample));
  }
}

}  // namespace

TEST_CASE("complement cells and samples") {
  SUBCASE("two rational roots") {
    const auto g = assemble_G_from({UPoly({ratio(15, 16), Rational(-2), Rational(1)})});  // (y - 3/4)(y - 5/4)
    const auto cells = components_complement(g);
    REQUIRE(cells.size() == 3);
    CHECK(!cells[0].left);
    CHECK(*cells[0].right == ratio(3, 4));
    CHECK(*cells[1].left == ratio(3, 4));
    CHECK(*cells[1].right == ratio(5, 4));
    CHECK(!cells[2].right);
    CHECK(cells[0].sample == ratio(-1, 4));
    CHECK(cells[1].sample == 1);
    CHECK(cells[2].sample == ratio(9, 4));
  }
  SUBCASE("no roots") {
    const auto cells = components_complement(DiscriminantSet{});
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].sample == 0);
  }
  SUBCASE("root at zero") {
    const auto cells = components_complement(assemble_G_from({UPoly({Rational(0), Rational(1)})}));
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].sample == -1);
    CHECK(cells[1].sample == 1);
  }
  SUBCASE("irrational roots keep samples outside the hulls") {
    const auto g = assemble_G_from({UPoly({Rational(-2), Rational(0), Rational(1)})});
    const auto cells = components_complement(g);
    REQUIRE(cells.size() == 3);
    for (const auto& c : cells) {
      CHECK(c.sample * c.sample != 2);
      for (const auto& r : g.roots) CHECK((c.sample < r.value.interval().lo || c.sample > r.value.interval().hi));
    }
    CHECK(cells[1].sample * cells[1].sample < 2);
  }
}

TEST_CASE("interior probes stay inside") {
  const ParameterCell bounded{Rational(0), Rational(1), ratio(1, 2)};
  const ParameterCell left{std::nullopt, Rational(3), Rational(2)};
  const ParameterCell right{Rational(3), std::nullopt, Rational(4)};
  const ParameterCell whole{std::nullopt, std::nullopt, Rational(0)};
  for (const auto& c : {bounded, left, right, whole}) {
    const auto p = interior_probes(c);
    REQUIRE(p.size() == 3);
    CHECK(std::find(p.begin(), p.end(), c.sample) != p.end());
    CHECK(std::set<Rational>(p.begin(), p.end()).size() == 3);
    for (const auto& y : p) {
      if (c.left) CHECK(y > *c.left);
      if (c.right) CHECK(y < *c.right);
    }
  }
}

TEST_CASE("fibre b0 of a thickened parabola") {
  const DefinedSet s = set_of("X1^2 + Y1 - 1 >= -1/4 and X1^2 + Y1 - 1 <= 1/4");
  for (auto method : {FiberMethod::ExactUnivariate, FiberMethod::GridOracle}) {
    CHECK(fiber_b0(s, Rational(0), method) == 2);
    CHECK(fiber_b0(s, Rational(1), method) == 1);
    CHECK(fiber_b0(s, ratio(9, 4), method) == 0);
  }
  // The single interval at y = 1 is exactly [-1/2, 1/2].
  CHECK(s.contains(std::vector<Rational>{ratio(1, 2), Rational(1)}));
  CHECK(!s.contains(std::vector<Rational>{ratio(513, 1024), Rational(1)}));
}

TEST_CASE("exact fibres: points, open intervals, whole line") {
  CHECK(exact_fiber_b0(set_of("X1^2 - Y1 = 0"), Rational(4)) == 2);
  CHECK(exact_fiber_b0(set_of("X1^2 - Y1 = 0"), Rational(0)) == 1);
  CHECK(exact_fiber_b0(set_of("X1^2 - Y1 < 0"), Rational(0)) == 0);
  CHECK(exact_fiber_b0(set_of("X1^2 - Y1 <= 0"), Rational(0)) == 1);
  CHECK(exact_fiber_b0(set_of("X1 - Y1 > 0 or X1 + Y1 < 0"), Rational(1)) == 2);
  CHECK(exact_fiber_b0(set_of("X1 - Y1 > 0 or X1 + Y1 < 0"), Rational(-1)) == 1);
  CHECK(exact_fiber_b0(set_of("Y1 >= 0"), Rational(1)) == 1);
  CHECK(exact_fiber_b0(set_of("Y1 >= 0"), Rational(-1)) == 0);
  // Touching closed intervals merge at the shared point.
  CHECK(exact_fiber_b0(set_of("X1 <= 0 or X1 * (X1 - 1) >= 0 and X1 >= 0"), Rational(0)) == 2);
  CHECK(exact_fiber_b0(set_of("X1 * (X1 - 1) * (X1 - 2) <= 0"), Rational(0)) == 2);
}

TEST_CASE("grid oracle with two fibre variables") {
  const Ring r21{2, 1};
  const DefinedSet disk = set_of("X1^2 + X2^2 + Y1^2 <= 1", r21);
  CHECK(grid_fiber_b0(disk, Rational(0)) == 1);
  CHECK(grid_fiber_b0(disk, Rational(2)) == 0);
  const DefinedSet pair = set_of("(X1 - 2)^2 + X2^2 <= Y1 or (X1 + 2)^2 + X2^2 <= Y1", r21);
  CHECK(grid_fiber_b0(pair, Rational(1)) == 2);
  CHECK(grid_fiber_b0(pair, Rational(9)) == 1);
  CHECK(grid_fiber_b0(pair, Rational(-1)) == 0);
  const DefinedSet annulus = set_of("X1^2 + X2^2 >= 1 and X1^2 + X2^2 <= 4 and Y1 >= 0", r21);
  CHECK(grid_fiber_b0(annulus, Rational(1)) == 1);
}

TEST_CASE("union-find") {
  UnionFind uf(6);
  uf.unite(0, 1);
  uf.unite(2, 3);
  uf.unite(1, 3);
  CHECK(uf.find(0) == uf.find(2));
  CHECK(uf.find(4) != uf.find(5));
  CHECK(uf.find(4) != uf.find(0));
}

TEST_CASE("quadric atlas") {
  const AtlasReport r = run_atlas(problem_input("vars m=1 n=1\npoly X1^2 + Y1 - 1\nsigma 0\n"));
  REQUIRE(r.cells.size() == 3);
  CHECK(r.fibers.size() == r.cells.size());
  CHECK(r.cells.size() == r.g.roots.size() + 1);
  CHECK(b0_values(r) == std::multiset<std::size_t>{0, 1, 2});
  CHECK(r.distinct_signatures == 3);
  CHECK(r.stabilization);
  CHECK(r.delta_used == ratio(1, 64));
  for (const auto& f : r.fibers) {
    CHECK(f.b0 == quadric_oracle(f.sample));
    CHECK(f.b0 == f.b0_perturbed);
  }
  // G = {1 - eps(2,1), 1 + eps(2,1)} with eps(2,1) = delta for s = 1.
  REQUIRE(r.g.roots.size() == 2);
  const Rational eps = ratio(1, 64);
  auto lo = r.g.roots[0].value, hi = r.g.roots[1].value;
  CHECK(compare(lo, 1 - eps) == 0);
  CHECK(compare(hi, 1 + eps) == 0);
  check_constant_cells(r);
}

TEST_CASE("lines atlas") {
  const AtlasReport r = run_atlas(problem_input(
      "vars m=1 n=1\npoly (X1 - 1)^2 * (X1 - 2)^2\nformula P1 = 0 and Y1 >= 0 and X1 - Y1 >= 0\n"));
  CHECK(r.cells.size() >= 3);
  std::set<std::size_t> values;
  for (const auto& f : r.fibers) {
    values.insert(f.b0);
    CHECK(f.b0 == lines_oracle(f.sample));
  }
  CHECK(values == std::set<std::size_t>{0, 1, 2});
  CHECK(r.stabilization);
  CHECK(r.genericity_failures == 0);
  check_constant_cells(r);
  CHECK(BigInt(r.distinct_signatures) <= bound_main(1, 1, 1, 4, 1));
}

TEST_CASE("empty sigma gives one empty cell") {
  AtlasInput in{R11, {parse_polynomial("X1^2 + Y1 - 1", R11)}, std::vector<SignCondition>{}, std::nullopt};
  const AtlasReport r = run_atlas(in);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.fibers[0].b0 == 0);
  CHECK(r.distinct_signatures == 1);
}

TEST_CASE("discriminant covers every change of the perturbed fibre") {
  for (const char* text : {"vars m=1 n=1\npoly X1^2 + Y1 - 1\nsigma 0\n", "vars m=1 n=1\nformula X1^2 + Y1^2 <= 1\n",
                           "vars m=1 n=1\nformula X1*Y1 >= 1 or X1^2 - Y1 <= 0\n"}) {
    CAPTURE(text);
    const AtlasReport r = run_atlas(problem_input(text));
    const Rational step = ratio(1, 64);
    std::size_t prev = exact_fiber_b0(r.s_prime, Rational(-3));
    for (Rational y = Rational(-3) + step; y <= 3; y += step) {
      const std::size_t cur = exact_fiber_b0(r.s_prime, y);
      if (cur != prev) {
        const Rational a = y - step;
        const bool covered = std::any_of(r.g.roots.begin(), r.g.roots.end(), [&](const DiscriminantRoot& root) {
          return root.value.interval().hi >= a && root.value.interval().lo <= y;
        });
        CHECK_MESSAGE(covered, "b0 changes in [" << to_string(a) << ", " << to_string(y) << "]");
      }
      prev = cur;
    }
  }
}

TEST_CASE("grid and exact fibres agree on atlas samples") {
  GridOptions grid;
  grid.resolution = ratio(1, 1024);
  for (const char* text : {"vars m=1 n=1\npoly X1^2 + Y1 - 1\nsigma 0\n", "vars m=1 n=1\nformula X1^2 + Y1^2 = 1\n"}) {
    const AtlasReport r = run_atlas(problem_input(text));
    for (const auto& f : r.fibers) {
      CHECK(grid_fiber_b0(r.input, f.sample, grid) == f.b0);
      CHECK(grid_fiber_b0(r.s_prime, f.sample, grid) == f.b0_perturbed);
    }
  }
}

TEST_CASE("atlas input validation") {
  AtlasInput in{Ring{1, 2}, {parse_polynomial("X1 + Y1 + Y2", Ring{1, 2})}, std::vector<SignCondition>{{{0}}},
                std::nullopt};
  CHECK_THROWS_AS(run_atlas(in), std::invalid_argument);
  AtlasInput ok = problem_input("vars m=1 n=1\npoly X1 - Y1\nsigma 0\n");
  AtlasOptions bad;
  bad.delta = Rational(2);
  CHECK_THROWS_AS(run_atlas(ok, bad), std::invalid_argument);
}
