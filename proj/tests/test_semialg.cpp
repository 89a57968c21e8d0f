#include <doctest.h>

#include <random>

#include "semifib/formula.hpp"
#include "semifib/semialg.hpp"
#include "semifib/syntax.hpp"

using namespace semifib;

namespace {

const Ring R1{1, 0};
const Ring R11{1, 1};

Polynomial P(const char* text, Ring ring = R11) { return parse_polynomial(text, ring); }

std::set<std::vector<int>> conditions(const SampledCellSet& set) {
  std::set<std::vector<int>> out;
  for (const auto& c : set.cells) out.insert(c.condition.signs);
  return out;
}

}  // namespace

TEST_CASE("levels and formulas of sign conditions") {
  CHECK(SignCondition{{0, 1}}.level() == 1);
  CHECK(SignCondition{{0, 0, 0}}.level() == 3);
  CHECK(SignCondition{{1, -1}}.level() == 0);

  CHECK(realization_formula({{0}}) == Formula::atom(0, Relation::Equal));
  CHECK(realization_formula({{1, -1}}).to_text() == "P1 > 0 and P2 < 0");
  CHECK(realization_formula({{0, 0}}).to_text() == "P1 = 0 and P2 = 0");
  CHECK(zset_formula({{0, -1}}).to_text() == "P1 = 0");
  CHECK(zset_formula({{1, 1}}).kind() == Formula::Kind::True);
  CHECK(zset_formula({{0, 0}}).to_text() == "P1 = 0 and P2 = 0");
}

TEST_CASE("formula evaluation") {
  std::vector<Polynomial> fam{P("X1^2+Y1-1")};
  DefinedSet s{R11, fam, Formula::atom(0, Relation::LessEq)};
  CHECK(s.contains(std::vector<Rational>{0, 0}));
  CHECK_THROWS(s.contains(std::vector<Rational>{0}));

  std::vector<Polynomial> x{parse_polynomial("X1", R1)};
  const Formula contradiction = Formula::conj({Formula::atom(0, Relation::Greater), Formula::atom(0, Relation::Less)});
  const Formula at_least = Formula::disj({Formula::atom(0, Relation::Equal), Formula::atom(0, Relation::Greater)});
  for (int v = -2; v <= 2; ++v) CHECK_FALSE((DefinedSet{R1, x, contradiction}.contains(std::vector<Rational>{v})));
  CHECK(DefinedSet{R1, x, at_least}.contains(std::vector<Rational>{0}));
}

TEST_CASE("three-valued evaluation") {
  const Formula f = Formula::conj({Formula::atom(0, Relation::GreaterEq), Formula::atom(1, Relation::Less)});
  const std::vector<std::uint8_t> known{signs::Pos, signs::Neg};
  CHECK(f.eval(std::span<const std::uint8_t>(known)) == Truth::True);
  const std::vector<std::uint8_t> partly{signs::Zero | signs::Pos, signs::Any};
  CHECK(f.eval(std::span<const std::uint8_t>(partly)) == Truth::Unknown);
  const std::vector<std::uint8_t> refuted{signs::Any, signs::Pos | signs::Zero};
  CHECK(f.eval(std::span<const std::uint8_t>(refuted)) == Truth::False);
}

TEST_CASE("negation flips relations") {
  const Formula f = Formula::conj({Formula::atom(0, Relation::Equal), Formula::atom(1, Relation::LessEq)});
  const Formula g = f.negated();
  CHECK(g.to_text() == "P1 < 0 or P1 > 0 or P2 > 0");
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      const std::vector<int> s{a, b};
      CHECK(g.eval(std::span<const int>(s)) == !f.eval(std::span<const int>(s)));
    }
  CHECK(f.is_closed());
  CHECK_FALSE(g.is_closed());
}

TEST_CASE("formula parser") {
  std::vector<Polynomial> fam{P("(X1-1)^2*(X1-2)^2")};
  const Formula f = parse_formula("P1 = 0 and Y1 >= 0 and 0 <= X1 - Y1", R11, fam);
  REQUIRE(fam.size() == 3);
  CHECK(fam[1] == P("Y1"));
  CHECK(fam[2] == P("X1-Y1"));
  CHECK(f.to_text() == "P1 = 0 and P2 >= 0 and P3 >= 0");

  std::vector<Polynomial> g;
  const Formula h = parse_formula("not ((X1+1)^2 > 4 or X1 < 0)", R11, g);
  CHECK(h.to_text() == "P1 <= 0 and P2 >= 0");
  CHECK(g[0] == P("(X1+1)^2 - 4"));
  CHECK(parse_formula("(X1 + 1) > 0", R11, g) == Formula::atom(2, Relation::Greater));
  CHECK(parse_formula("true or X1 > 0", R11, g).kind() == Formula::Kind::True);
  CHECK(parse_formula("1 < 0", R11, g).kind() == Formula::Kind::False);
  CHECK(parse_formula("-X1 - 1 < 0", R11, g) == Formula::atom(2, Relation::Greater));
  CHECK_THROWS_AS(parse_formula("X1 +", R11, g), ParseError);
  CHECK_THROWS_AS(parse_formula("X1 > 0 and", R11, g), ParseError);
  CHECK_THROWS_AS(parse_formula("P9 > 0", R11, g), ParseError);
  CHECK_THROWS_AS(parse_formula("X1", R11, g), ParseError);
}

TEST_CASE("compaction keeps only used members") {
  std::vector<Polynomial> fam{P("X1"), P("Y1"), P("X1+Y1")};
  DefinedSet s{R11, fam, Formula::conj({Formula::atom(2, Relation::Less), Formula::atom(0, Relation::Equal)})};
  const DefinedSet c = s.compact();
  REQUIRE(c.family.size() == 2);
  CHECK(c.family[0] == P("X1"));
  CHECK(c.family[1] == P("X1+Y1"));
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      const std::vector<Rational> pt{a, b};
      CHECK(s.contains(pt) == c.contains(pt));
    }
}

TEST_CASE("sampling examples") {
  const std::vector<Polynomial> x{parse_polynomial("X1", R1)};
  const auto found = sample_sign_conditions(x, R1, Box::cube(1, -1, 1), 3);
  CHECK(conditions(found) == std::set<std::vector<int>>{{-1}, {0}, {1}});
  CHECK(found.complete);

  const std::vector<Polynomial> pos{P("X1^2+1")};
  CHECK(conditions(sample_sign_conditions(pos, R11, Box::unbounded(2), 4)) == std::set<std::vector<int>>{{1}});

  const auto empty = sample_sign_conditions({}, R11, Box::unbounded(2), 1);
  REQUIRE(empty.cells.size() == 1);
  CHECK(empty.cells[0].condition.signs.empty());

  CHECK_THROWS(sample_sign_conditions(x, R1, Box::cube(1, 1, -1), 3));
  CHECK_THROWS(sample_sign_conditions(x, R1, Box::cube(1, -1, 1), 0));
}

TEST_CASE("sampling the circle and a line") {
  // The line X = Y meets the unit circle only at irrational points.
  const std::vector<Polynomial> fam{P("X1^2+Y1^2-1"), P("X1-Y1")};
  const auto s = sample_sign_conditions(fam, R11, Box::unbounded(2), 8);
  const auto got = conditions(s);
  CHECK(got.count({-1, -1}));
  CHECK(got.count({-1, 0}));
  CHECK(got.count({-1, 1}));
  CHECK(got.count({0, -1}));
  CHECK(got.count({0, 1}));
  CHECK(got.count({1, 0}));
  CHECK(got.count({1, 1}));
  CHECK(got.count({1, -1}));
  // (0, 0) lies at Y = +-1/sqrt 2, an irrational slice.
  CHECK_FALSE(s.complete);
}

TEST_CASE("sampling a small ball in three variables") {
  const Ring R21{2, 1};
  const std::vector<Polynomial> fam{P("X1^2+X2^2+Y1^2-1/4", R21)};
  const auto s = sample_sign_conditions(fam, R21, Box::unbounded(3), 4);
  CHECK(conditions(s) == std::set<std::vector<int>>{{-1}, {0}, {1}});
  CHECK_FALSE(s.complete);
}

TEST_CASE("sampled witnesses reproduce their conditions") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polynomial> fam;
    for (int k = 0; k < 2; ++k) {
      Polynomial p(R11);
      for (unsigned a = 0; a <= 2; ++a)
        for (unsigned b = 0; a + b <= 2; ++b) p += Polynomial::monomial(R11, {a, b}, coef(rng));
      fam.push_back(p);
    }
    auto set = sample_sign_conditions(fam, R11, Box::cube(2, -3, 3), 6);
    for (auto& c : set.cells) {
      CHECK(signs_at(fam, c.witness) == c.condition.signs);
      CHECK(c.condition.level() + (c.condition.size() - c.condition.level()) == fam.size());
      // The realization implies the zero-set formula at the witness.
      CHECK(zset_formula(c.condition).eval(std::span<const int>(c.condition.signs)));
      CHECK(realization_formula(c.condition).eval(std::span<const int>(c.condition.signs)));
    }
  }
}
