// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semifib/atlas.hpp"
#include "semifib/bounds.hpp"
#include "semifib/cli.hpp"
#include "semifib/matrix.hpp"
#include "semifib/problem.hpp"
#include "semifib/slp.hpp"
#include "semifib/syntax.hpp"

using namespace semifib;
namespace fs = std::filesystem;

namespace {

const std::string kData = SEMIFIB_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << " s";
  return os.str();
}

// Runs the atlas subcommand and returns its JSON document.
nlohmann::json cli_atlas(const std::string& file, int& code) {
  std::ostringstream out, err;
  code = run_cli({"atlas", file, "--json", "-"}, out, err);
  if (code != exit_code::ok) return {};
  return nlohmann::json::parse(out.str());
}

std::vector<std::string> bundled_problems() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(kData + "/problems"))
    if (e.path().extension() == ".prob") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

struct Bundled {
  std::string name;
  AtlasInput input;
  AtlasOptions options;
  AtlasReport report;
};

// Same defaults the command line applies to a problem file.
std::vector<Bundled>& bundled() {
  static std::vector<Bundled> all = [] {
    std::vector<Bundled> out;
    for (const auto& path : bundled_problems()) {
      const ProblemFile pf = load_problem(path);
      Bundled b;
      b.name = fs::path(path).stem().string();
      b.input.ring = pf.ring;
      b.input.base = pf.polys;
      if (pf.formula)
        b.input.formula = pf.formula;
      else
        b.input.sigma = pf.sigma;
      if (auto it = pf.options.find("delta"); it != pf.options.end()) b.options.delta = parse_rational(it->second);
      b.report = run_atlas(b.input, b.options);
      out.push_back(std::move(b));
    }
    return out;
  }();
  return all;
}

Outcome quadric() {
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  const auto j = cli_atlas(kData + "/problems/quadric.prob", code);
  const double dt = seconds_since(t0);
  if (code != exit_code::ok) return {false, "exit code " + std::to_string(code)};
  std::multiset<std::size_t> b0;
  for (const auto& f : j["fibers"]) b0.insert(f["b0"].get<std::size_t>());
  const bool ok = j["cells"].size() == 3 && b0 == std::multiset<std::size_t>{0, 1, 2} &&
                  j["stabilization"].get<bool>() && dt < 5.0;
  return {ok, std::to_string(j["cells"].size()) + " cells, stabilized " +
                  (j["stabilization"].get<bool>() ? "yes" : "no") + ", " + fmt_seconds(dt)};
}

Outcome lines() {
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  const auto j = cli_atlas(kData + "/problems/lines.prob", code);
  const double dt = seconds_since(t0);
  if (code != exit_code::ok) return {false, "exit code " + std::to_string(code)};
  std::set<std::size_t> b0;
  for (const auto& f : j["fibers"]) b0.insert(f["b0"].get<std::size_t>());
  const bool ok = j["cells"].size() >= 3 && b0 == std::set<std::size_t>{0, 1, 2} && dt < 10.0;
  std::string values;
  for (auto v : b0) values += (values.empty() ? "" : ",") + std::to_string(v);
  return {ok, std::to_string(j["cells"].size()) + " cells, b0 values {" + values + "}, " + fmt_seconds(dt)};
}

bool member_of(const Formula& f, const std::vector<Polynomial>& fam, const std::vector<Rational>& pt) {
  std::vector<int> s;
  for (const auto& p : fam) s.push_back(sign_at(p, pt));
  return f.eval(std::span<const int>(s));
}

std::vector<SignCondition> all_conditions(std::size_t s) {
  std::vector<SignCondition> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < s; ++k) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    SignCondition sc;
    for (std::size_t k = 0, c = code; k < s; ++k, c /= 3) sc.signs.push_back(static_cast<int>(c % 3) - 1);
    out.push_back(sc);
  }
  return out;
}

Outcome closed_rewrite() {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> num(-16, 16);
  std::uniform_int_distribution<int> den(1, 4);
  std::bernoulli_distribution coin(0.5);
  const int families = 50, points_per = 100, max_rounds = 4;
  int unstable = 0;
  std::size_t worst_round = 0;
  for (int trial = 0; trial < families; ++trial) {
    const std::size_t m = 1 + trial % 2;
    const std::size_t s = 1 + (trial / 2) % 2;
    const Ring ring{m, 1};
    std::vector<Polynomial> base;
    for (std::size_t k = 0; k < s; ++k) {
      Polynomial p(ring);
      std::function<void(std::size_t, Exponents&, unsigned)> fill = [&](std::size_t v, Exponents& e, unsigned left) {
        if (v == ring.size()) {
          p += Polynomial::monomial(ring, e, coef(rng));
          return;
        }
        for (unsigned a = 0; a <= left; ++a) {
          e[v] = a;
          fill(v + 1, e, left - a);
        }
        e[v] = 0;
      };
      Exponents e(ring.size(), 0);
      fill(0, e, 2);
      if (p.is_zero() || p.is_constant()) p += Polynomial::monomial(ring, Exponents(ring.size(), 1), 1);
      base.push_back(p);
    }
    const std::vector<SignCondition> realizable = all_conditions(s);
    std::vector<SignCondition> sigma;
    for (const auto& sc : realizable)
      if (coin(rng)) sigma.push_back(sc);
    std::vector<std::vector<Rational>> points;
    for (int k = 0; k < points_per; ++k) {
      std::vector<Rational> pt;
      for (std::size_t v = 0; v < ring.size(); ++v) pt.push_back(ratio(num(rng), den(rng)));
      points.push_back(pt);
    }

    auto mismatches = [&](const Rational& delta) {
      const PerturbedFamily pf(base, EpsilonLadder(s, delta));
      const auto fam = pf.combined();
      const Formula pre = build_unrewritten(sigma, realizable, pf);
      const Formula post = rewrite_closed(pre, pf);
      int bad = 0;
      for (const auto& pt : points) bad += member_of(pre, fam, pt) != member_of(post, fam, pt);
      return bad;
    };
    // Stabilized: zero mismatches at delta and at delta^2.
    Rational delta(1, 64);
    int prev = mismatches(delta);
    bool stable = false;
    for (int round = 1; round <= max_rounds && !stable; ++round) {
      delta *= delta;
      const int now = mismatches(delta);
      if (prev == 0 && now == 0) {
        stable = true;
        worst_round = std::max<std::size_t>(worst_round, round);
      }
      prev = now;
    }
    unstable += !stable;
  }
  return {unstable == 0, std::to_string(families) + " families x " + std::to_string(points_per) + " points, " +
                             std::to_string(unstable) + " without a stabilized delta, latest stabilization after " +
                             std::to_string(worst_round) + " squaring(s)"};
}

Outcome rank_genericity() {
  std::size_t checked = 0, failures = 0, worst_rounds = 0;
  std::string bad;
  for (const auto& b : bundled()) {
    checked += b.report.genericity_checked;
    failures += b.report.genericity_failures;
    worst_rounds = std::max(worst_rounds, b.report.deltas_tried.size());
    if (b.report.genericity_failures > 0 || b.report.deltas_tried.size() > 3) bad += " " + b.name;
  }
  return {bad.empty() && checked > 0, std::to_string(bundled().size()) + " examples, " + std::to_string(checked) +
                                          " witnesses checked, " + std::to_string(failures) +
                                          " rank failures, at most " + std::to_string(worst_rounds) +
                                          " delta round(s)" + (bad.empty() ? "" : ", failing:" + bad)};
}

FiberMethod method_for(const Bundled& b) {
  return b.input.ring.m == 1 ? FiberMethod::ExactUnivariate : FiberMethod::GridOracle;
}

Outcome constancy() {
  std::size_t probes = 0;
  std::string bad;
  for (const auto& b : bundled()) {
    const FiberMethod method = method_for(b);
    for (std::size_t k = 0; k < b.report.cells.size(); ++k) {
      // The cells come from the discriminant of S', so constancy is a claim about S'.
      std::set<std::size_t> values;
      for (const auto& y : interior_probes(b.report.cells[k])) {
        values.insert(fiber_b0(b.report.s_prime, y, method, b.options.grid));
        ++probes;
      }
      if (values.size() != 1) bad += " " + b.name + "#" + std::to_string(k);
    }
  }
  return {bad.empty(), std::to_string(probes) + " probes over " + std::to_string(bundled().size()) + " examples" +
                           (bad.empty() ? ", all constant" : ", varying in" + bad)};
}

Outcome oracle_agreement() {
  GridOptions grid;
  grid.resolution = Rational(1, 1024);
  std::size_t compared = 0;
  std::string bad;
  for (const auto& b : bundled()) {
    if (b.input.ring.m != 1) continue;
    for (const auto& cell : b.report.cells)
      for (const DefinedSet* set : {&b.report.input, &b.report.s_prime}) {
        ++compared;
        if (exact_fiber_b0(*set, cell.sample) != grid_fiber_b0(*set, cell.sample, grid))
          bad += " " + b.name + "@" + to_string(cell.sample);
      }
  }
  return {bad.empty() && compared > 0,
          std::to_string(compared) + " fibres compared at resolution 2^-10" + (bad.empty() ? "" : ", differ:" + bad)};
}

Outcome bounds() {
  bool ok = bound_main(2, 1, 1, 2, 1) == 64 && count_family(2, 1, CountScheme::PPrimePaper) == 8 &&
            metric_radius(2, 2, 2, 1).value == 16 && bound_additive(1, 1, 1) == 65536;
  const bool exact = ok;
  std::mt19937_64 rng(99);
  std::size_t tuples = 0, violations = 0;
  for (const auto& b : bound_registry()) {
    for (int trial = 0; trial < 200; ++trial, ++tuples) {
      BoundParams p;
      for (const auto& q : b.params) p[q.name] = std::uniform_int_distribution<long>(q.minimum, q.minimum + 3)(rng);
      const BigInt c = std::uniform_int_distribution<long>(1, 2)(rng);
      const BigInt base = b.value(p, c).value;
      for (const auto& q : b.params) {
        BoundParams up = p;
        up[q.name] += 1;
        violations += b.value(up, c).value < base;
      }
      violations += b.value(p, c + 1).value < base;
    }
  }
  ok = ok && violations == 0;
  return {ok, std::string("worked values ") + (exact ? "exact" : "WRONG") + ", " + std::to_string(tuples) +
                  " random tuples, " + std::to_string(violations) + " monotonicity violations"};
}

Outcome slp_round_trip() {
  std::ifstream in(kData + "/slp_corpus.txt");
  std::vector<std::string> texts;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') texts.push_back(line);
  std::size_t expand_bad = 0, lift_bad = 0;
  bool cube_ok = false;
  for (const auto& t : texts) {
    const SLPProgram p = parse_slp(t);
    if (!(expand(p) == parse_polynomial(t, Ring{p.m, 0}))) ++expand_bad;
    if (t == "(X1+1)^3") cube_ok = p.a() == 1;
    const std::vector<SLPProgram> progs{p};
    const Formula f = Formula::atom(0, Relation::GreaterEq);
    const LiftReport rep = verify_lift(lift(progs, f), progs, f, 8);
    lift_bad += !rep.symbolic_ok;
  }
  const bool ok = texts.size() == 30 && expand_bad == 0 && lift_bad == 0 && cube_ok;
  return {ok, std::to_string(texts.size()) + " expressions, " + std::to_string(expand_bad) + " expand mismatches, " +
                  std::to_string(lift_bad) + " lift failures, (X1+1)^3 has a = " + (cube_ok ? "1" : "?")};
}

Outcome resultants() {
  // Symbolic e as a second parameter, then rational values of e.
  const Ring r12{1, 2};
  bool ok = resultant(parse_polynomial("X1^2 + Y1 - 1 - Y2", r12), parse_polynomial("2*X1", r12), 0) ==
            parse_polynomial("4*Y1 - 4 - 4*Y2", r12);
  const Ring r11{1, 1};
  for (const Rational e : {Rational(0), ratio(1, 64), ratio(-3, 7), Rational(5)}) {
    const Polynomial f = parse_polynomial("X1^2 + Y1 - 1", r11) - Polynomial::constant(r11, e);
    const Polynomial want = 4 * (parse_polynomial("Y1 - 1", r11) - Polynomial::constant(r11, e));
    ok = ok && resultant(f, parse_polynomial("2*X1", r11), 0) == want;
  }
  const bool fixed_ok = ok;

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> small(-4, 4);
  std::size_t nonzero = 0;
  auto random_poly = [&](unsigned deg) {
    Polynomial p(r11);
    for (unsigned a = 0; a <= deg; ++a)
      for (unsigned b = 0; a + b <= deg; ++b) p += Polynomial::monomial(r11, {a, b}, small(rng));
    if (p.is_zero()) p = Polynomial::constant(r11, 1);
    return p;
  };
  for (int k = 0; k < 20; ++k) {
    // Half share the factor X - Y, half a rational root X = p/q independent of Y.
    const Polynomial shared = k % 2 == 0 ? parse_polynomial("X1 - Y1", r11)
                                         : parse_polynomial("X1", r11) -
                                               Polynomial::constant(r11, ratio(small(rng), 1 + k % 3));
    const Polynomial f = shared * random_poly(1 + k % 2);
    const Polynomial g = shared * random_poly(1);
    nonzero += !resultant(f, g, 0).is_zero();
  }
  ok = ok && nonzero == 0;
  return {ok, std::string("fixed identity ") + (fixed_ok ? "exact" : "WRONG") + ", 20 common-root instances, " +
                  std::to_string(nonzero) + " non-vanishing"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"quadric end-to-end", quadric},
      {"lines example", lines},
      {"closed rewrite equivalence", closed_rewrite},
      {"rank genericity", rank_genericity},
      {"per-cell fibre constancy", constancy},
      {"grid and exact oracle agreement", oracle_agreement},
      {"bound evaluator", bounds},
      {"SLP round trip", slp_round_trip},
      {"resultant correctness", resultants},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << c.name << ": " << o.detail << " ["
              << fmt_seconds(seconds_since(t0)) << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
