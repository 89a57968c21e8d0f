#include "semifib/report.hpp"

#include <iomanip>
#include <map>
#include <sstream>

namespace semifib {

namespace {

std::string decimal(const Rational& q) {
  std::ostringstream os;
  os << std::setprecision(12) << q.get_d();
  return os.str();
}

std::string bound_text(const std::optional<Rational>& b, const char* infinite) {
  return b ? rational_text(*b) : infinite;
}

// Exact text when short, otherwise a decimal marked with '~'.
std::string short_text(const Rational& q) {
  const std::string exact = rational_text(q);
  return exact.size() <= 20 ? exact : "~" + decimal(q);
}

std::string method_name(FiberMethod m) { return m == FiberMethod::GridOracle ? "grid" : "exact"; }

Json polys(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

}  // namespace

std::string rational_text(const Rational& q) { return to_string(q); }

Json to_json(const CriticalSystem& cs) {
  Json j;
  j["kind"] = kind_name(cs.kind);
  j["stratum"] = cs.stratum;
  j["active"] = polys(cs.active);
  j["minors"] = polys(cs.minors);
  return j;
}

Json to_json(const DiscriminantSet& g) {
  Json j;
  j["mode"] = g.mode == DiscriminantSet::Mode::ExactN1 ? "exact" : "approximate";
  Json defining = Json::array();
  for (const auto& p : g.defining) defining.push_back(p.to_string("Y1"));
  j["defining"] = defining;
  Json roots = Json::array();
  for (const auto& r : g.roots) {
    Json e;
    e["lo"] = rational_text(r.value.interval().lo);
    e["hi"] = rational_text(r.value.interval().hi);
    e["exact"] = r.value.exact();
    e["approx"] = decimal(r.value.approximation());
    e["defining"] = r.defining;
    roots.push_back(e);
  }
  j["roots"] = roots;
  return j;
}

Json to_json(const DefinedSet& set) {
  Json j;
  j["m"] = set.ring.m;
  j["n"] = set.ring.n;
  j["family"] = polys(set.family);
  j["formula"] = set.formula.to_text();
  return j;
}

Json to_json(const AtlasReport& r) {
  Json j;
  Json cells = Json::array();
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    const auto& c = r.cells[k];
    Json e;
    e["left"] = bound_text(c.left, "-inf");
    e["right"] = bound_text(c.right, "+inf");
    e["sample"] = rational_text(c.sample);
    cells.push_back(e);
  }
  j["cells"] = cells;
  Json fibers = Json::array();
  for (const auto& f : r.fibers) {
    Json e;
    e["sample"] = rational_text(f.sample);
    e["b0"] = f.b0;
    e["b0_perturbed"] = f.b0_perturbed;
    e["method"] = method_name(f.method);
    if (f.resolution) e["resolution"] = rational_text(*f.resolution);
    fibers.push_back(e);
  }
  j["fibers"] = fibers;
  j["distinct_signatures"] = r.distinct_signatures;
  j["delta_used"] = rational_text(r.delta_used);
  j["stabilization"] = r.stabilization;

  j["input"] = to_json(r.input);
  Json sigma = Json::array();
  for (const auto& sc : r.sigma) sigma.push_back(sc.signs);
  j["sigma"] = sigma;
  j["sigma_complete"] = r.sigma_complete;
  j["discriminant"] = to_json(r.g);
  j["members_used"] = r.members_used;
  j["strata"] = r.strata;
  j["systems"] = r.systems;
  j["genericity"] = {{"checked", r.genericity_checked}, {"failures", r.genericity_failures}};
  Json tried = Json::array();
  for (const auto& d : r.deltas_tried) tried.push_back(rational_text(d));
  j["deltas_tried"] = tried;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const BoundRow& row) {
  Json j;
  j["name"] = row.name;
  j["symbolic"] = row.symbolic;
  Json params;
  for (const auto& [k, v] : row.params) params[k] = v.get_str();
  j["params"] = params.is_null() ? Json::object() : params;
  j["c"] = row.c.get_str();
  j["value"] = row.value.get_str();
  j["digits"] = row.value.get_str().size();
  if (row.warning) j["warning"] = *row.warning;
  if (row.statement) j["statement"] = *row.statement;
  return j;
}

Json to_json(const LiftedSystem& ls, const LiftReport& check) {
  const auto names = ls.variable_names();
  Json j;
  j["m"] = ls.m();
  j["a"] = ls.a();
  Json vars = Json::array();
  for (std::size_t t = 0; t < ls.lift_variables.size(); ++t) {
    const auto& v = ls.lift_variables[t];
    vars.push_back({{"name", names[ls.m() + t]},
                    {"shared", "Y" + std::to_string(t + 1)},
                    {"program", v.program + 1},
                    {"step", v.step + 1}});
  }
  j["variables"] = vars;
  Json eqs = Json::array();
  for (const auto& e : ls.equations) eqs.push_back(e.to_string(names));
  j["equations"] = eqs;
  Json atoms = Json::array();
  for (const auto& a : ls.atoms) atoms.push_back(a.to_string(names));
  j["atoms"] = atoms;
  std::vector<std::string> atom_names;
  for (const auto& a : ls.atoms) atom_names.push_back("(" + a.to_string(names) + ")");
  j["formula"] = ls.rewritten_formula.to_text(atom_names);
  Json v;
  v["symbolic_ok"] = check.symbolic_ok;
  v["triangular"] = check.triangular;
  v["samples"] = check.samples.size();
  v["sample_failures"] = check.sample_failures;
  j["verification"] = v;
  return j;
}

void print_table(std::ostream& os, const AtlasReport& r) {
  os << "cells: " << r.cells.size() << "   delta: " << rational_text(r.delta_used)
     << "   stabilized: " << (r.stabilization ? "yes" : "no") << "   distinct b0: " << r.distinct_signatures << '\n';
  os << std::left << std::setw(6) << "cell" << std::setw(22) << "left" << std::setw(22) << "right"
     << std::setw(22) << "sample" << std::setw(6) << "b0" << "b0(S')" << '\n';
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    const auto& c = r.cells[k];
    const auto& f = r.fibers[k];
    const auto left = c.left ? short_text(*c.left) : std::string("-inf");
    const auto right = c.right ? short_text(*c.right) : std::string("+inf");
    os << std::setw(6) << k << std::setw(22) << left << ' ' << std::setw(21) << right << ' ' << std::setw(21)
       << short_text(c.sample) << ' ' << std::setw(5) << f.b0 << f.b0_perturbed << '\n';
  }
  os << "members used " << r.members_used << ", strata " << r.strata << ", systems " << r.systems
     << ", rank checks " << r.genericity_checked << " (" << r.genericity_failures << " failed)\n";
  for (const auto& n : r.notes) os << "note: " << n << '\n';
}

void print_table(std::ostream& os, const BoundRow& row) {
  os << row.name << "  " << row.symbolic << '\n';
  os << "  params:";
  for (const auto& [k, v] : row.params) os << ' ' << k << '=' << v.get_str();
  os << "  c=" << row.c.get_str() << '\n';
  const std::string v = row.value.get_str();
  if (v.size() <= 80)
    os << "  value: " << v << '\n';
  else
    os << "  value: " << v.substr(0, 20) << "... (" << v.size() << " digits)\n";
  if (row.warning) os << "  warning: " << *row.warning << '\n';
  if (row.statement) os << "  " << *row.statement << '\n';
}

void print_problem(std::ostream& os, const LiftedSystem& ls) {
  const auto names = ls.variable_names();
  os << "vars m=" << ls.m() << " n=" << ls.a() << '\n';
  for (std::size_t t = 0; t < ls.a(); ++t) os << "# Y" << t + 1 << " = " << names[ls.m() + t] << '\n';
  print_problem(os, ls.defined_set());
}

void print_problem(std::ostream& os, const DefinedSet& set) {
  for (const auto& p : set.family) os << "poly " << p.to_string() << '\n';
  os << "formula " << set.formula.to_text() << '\n';
}

void write_cells_csv(std::ostream& os, const AtlasReport& r) {
  os << "cell,left,right,sample,b0,b0_perturbed\n";
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    const auto& c = r.cells[k];
    os << k << ',' << bound_text(c.left, "-inf") << ',' << bound_text(c.right, "+inf") << ','
       << rational_text(c.sample) << ',' << r.fibers[k].b0 << ',' << r.fibers[k].b0_perturbed << '\n';
  }
}

}  // namespace semifib
