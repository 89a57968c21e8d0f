#include <doctest.h>

#include <random>

#include "semifib/bounds.hpp"

using namespace semifib;

namespace {

// Repeated multiplication, independent of the gmp power routine.
BigInt naive_pow(BigInt base, unsigned long e) {
  BigInt out = 1;
  for (unsigned long k = 0; k < e; ++k) out *= base;
  return out;
}

BigInt pascal(unsigned long n, unsigned long k) {
  std::vector<BigInt> row{1};
  for (unsigned long i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1, 1);
    for (unsigned long j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return k > n ? BigInt(0) : row[k];
}

}  // namespace

TEST_CASE("main bound") {
  CHECK(bound_main(1, 1, 1, 1, 1) == 2);
  CHECK(bound_main(2, 1, 1, 2, 1) == 64);
  for (unsigned long m = 1; m <= 3; ++m)
    for (unsigned long n = 1; n <= 2; ++n)
      for (unsigned long s = 1; s <= 3; ++s)
        for (unsigned long d = 1; d <= 3; ++d)
          for (unsigned long c = 1; c <= 2; ++c)
            CHECK(bound_main(m, n, s, d, c) == naive_pow(naive_pow(2, m) * s * n * d, c * n * m));
  CHECK_THROWS_AS(bound_main(0, 1, 1, 1, 1), std::domain_error);
  CHECK_THROWS_AS(bound_main(1, 1, 1, -2, 1), std::domain_error);
  CHECK_THROWS_AS(bound_main(1, 1, 1, 1, 0), std::domain_error);
}

TEST_CASE("precise bound") {
  CHECK(bound_main_precise(1, 1, 1, 1, 1) == 2);
  CHECK(bound_main_precise(1, 1, 2, 1, 1) == 32);
  for (unsigned long m = 1; m <= 3; ++m)
    for (unsigned long d = 1; d <= 3; ++d)
      CHECK(bound_main_precise(m, 1, 1, d, 1) == naive_pow(naive_pow(2, m) * d, m));
  CHECK(bound_main_precise(2, 2, 3, 2, 1) == naive_pow(3, 12) * naive_pow(4 * 2 * 2, 4));
}

TEST_CASE("lists bound") {
  CHECK(binomial(4, 2) == 6);
  CHECK(bound_lists(1, 1, 1, 1) == 4);
  for (unsigned long m = 1; m <= 4; ++m)
    for (unsigned long d = 1; d <= 4; ++d) {
      CHECK(binomial(m + d, d) == binomial(m + d, m));
      CHECK(binomial(m + d, d) == pascal(m + d, d));
    }
  const BigInt N = 2 * pascal(4, 2);
  CHECK(bound_lists(2, 2, 2, 1) == naive_pow(N, N.get_ui() * 2));
}

TEST_CASE("fewnomial and additive bounds") {
  CHECK(bound_fewnomial(1, 1, 1) == 2);
  CHECK(bound_additive(1, 1, 1) == 65536);
  CHECK(bound_additive(3, 0, 1) == 1);
  CHECK(bound_fewnomial(1, 2, 1) == naive_pow(2, 16));
  CHECK(bound_additive(2, 1, 1) == naive_pow(2, 81));
}

TEST_CASE("pfaffian bound") {
  CHECK(bound_pfaffian(1, 1, 1, 1, 1, 1, 1) == 16);
  for (unsigned long m = 1; m <= 3; ++m) {
    // r = 0 leaves 2^(c n m^2) in the middle.
    const BigInt v = bound_pfaffian(m, 1, 1, 0, 1, 0, 1);
    CHECK(v == naive_pow(2, m * m) * naive_pow(m, m));
  }
  BigInt prev = 0;
  for (unsigned long ab = 1; ab <= 6; ++ab) {
    const BigInt v = bound_pfaffian(2, 1, 2, 1, ab, 0, 1);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("family counts") {
  CHECK(count_family(2, 1, CountScheme::PPrimePaper) == 8);
  CHECK(count_family(2, 1, CountScheme::PPrimeImpl) == 16);
  CHECK(count_family(1, 1, CountScheme::MinorsPaper) == 2);
  CHECK(count_family(1, 1, CountScheme::ZSets) == 4);
  for (unsigned long s = 1; s <= 3; ++s)
    for (unsigned long m = 1; m <= 3; ++m) {
      BigInt minors = 0, zsets = 0;
      for (unsigned long l = 1; l <= m; ++l) minors += pascal(2 * s * s, l) * pascal(m, l);
      for (unsigned long l = 0; l <= m + 1; ++l) zsets += pascal(2 * s * s, l);
      CHECK(count_family(s, m, CountScheme::MinorsPaper) == minors);
      CHECK(count_family(s, m, CountScheme::ZSets) == zsets);
    }
  CHECK(parse_count_scheme("zsets") == CountScheme::ZSets);
  CHECK_THROWS_AS(parse_count_scheme("bogus"), std::invalid_argument);
  for (auto sch : {CountScheme::PPrimePaper, CountScheme::PPrimeImpl, CountScheme::MinorsPaper, CountScheme::ZSets})
    CHECK(parse_count_scheme(scheme_name(sch)) == sch);
}

TEST_CASE("metric radius") {
  CHECK(metric_radius(2, 2, 2, 1).value == 16);
  CHECK(metric_radius(2, 2, 1, 1).value == 4);
  CHECK(metric_radius(3, 2, 1, 1).value == 9);
  CHECK(!metric_radius(3, 2, 1, 1).warning);
  CHECK(!metric_radius(3, 2, 1, 1).statement.empty());
  const auto degenerate = metric_radius(1, 5, 2, 1);
  CHECK(degenerate.value == 1);
  CHECK(degenerate.warning);
  CHECK(metric_radius(5, 1, 3, 2).value == 5);
  CHECK(metric_radius(5, 1, 3, 2).warning);
  CHECK_THROWS_AS(metric_radius(0, 2, 1, 1), std::domain_error);
}

TEST_CASE("huge values are refused, not attempted") {
  CHECK_THROWS_AS(bound_additive(20, 20, 5), std::overflow_error);
  CHECK_THROWS_AS(metric_radius(2, 10, 10, 1), std::overflow_error);
}

TEST_CASE("registry rows") {
  const BoundRow row = evaluate_bound("main", {{"m", 2}, {"n", 1}, {"s", 1}, {"d", 2}}, 1);
  CHECK(row.value == 64);
  CHECK(row.symbolic == "(2^m*s*n*d)^(c*n*m)");
  REQUIRE(row.params.size() == 4);
  CHECK(row.params[0].first == "m");
  CHECK(evaluate_bound("count_pprime_paper", {{"s", 2}, {"m", 1}}).value == 8);
  const BoundRow metric = evaluate_bound("metric", {{"M", 2}, {"d", 2}, {"m", 2}});
  CHECK(metric.value == 16);
  CHECK(metric.statement);
  CHECK_THROWS_AS(evaluate_bound("nonexistent", {}), UnknownBound);
  CHECK_THROWS_AS(evaluate_bound("main", {{"m", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_bound("main", {{"m", 1}, {"n", 1}, {"s", 1}, {"d", 1}, {"q", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_bound("main", {{"m", 0}, {"n", 1}, {"s", 1}, {"d", 1}}), std::domain_error);
  // Re-evaluation is bit-identical.
  CHECK(evaluate_bound("lists", {{"m", 2}, {"s", 2}, {"d", 2}}, 2).value ==
        evaluate_bound("lists", {{"m", 2}, {"s", 2}, {"d", 2}}, 2).value);
}

TEST_CASE("every bound is monotone in every parameter and in c") {
  std::mt19937_64 rng(7);
  for (const auto& b : bound_registry()) {
    CAPTURE(b.name);
    for (int trial = 0; trial < 200; ++trial) {
      BoundParams p;
      for (const auto& q : b.params) p[q.name] = std::uniform_int_distribution<long>(q.minimum, 3)(rng);
      const BigInt c = std::uniform_int_distribution<long>(1, 2)(rng);
      const BigInt base = b.value(p, c).value;
      CHECK(base >= 0);
      for (const auto& q : b.params) {
        BoundParams up = p;
        up[q.name] += 1;
        CHECK(b.value(up, c).value >= base);
      }
      CHECK(b.value(p, c + 1).value >= base);
    }
  }
}
