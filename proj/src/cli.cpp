#include "semifib/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "semifib/problem.hpp"
#include "semifib/report.hpp"
#include "semifib/syntax.hpp"

namespace semifib {

namespace {

struct PipelineFlags {
  std::string file;
  std::string delta, refine_rounds, mode, grid_res, omega, window, sample_budget;
  bool boxed = false;
  std::string json, csv;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("file", f.file, "problem file")->required();
  cmd->add_option("--delta", f.delta, "base of the epsilon ladder (default 1/64)");
  cmd->add_option("--refine-rounds", f.refine_rounds, "delta -> delta^2 refinements (default 3)");
  cmd->add_option("--mode", f.mode, "fibre method: exact or grid");
  cmd->add_option("--grid-res", f.grid_res, "grid oracle resolution (default 1/1024)");
  cmd->add_flag("--boxed", f.boxed, "intersect with the box |X_i| < omega");
  cmd->add_option("--omega", f.omega, "box half-width for --boxed (default 2^20)");
  cmd->add_option("--json", f.json, "write the JSON report here ('-' for stdout)");
  cmd->add_option("--dump-csv", f.csv, "write cell boundaries as CSV");
}

std::string pick(const std::string& flag, const ProblemFile& pf, const std::string& key) {
  if (!flag.empty()) return flag;
  const auto it = pf.options.find(key);
  return it == pf.options.end() ? std::string() : it->second;
}

unsigned long parse_unsigned(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(std::string(what) + " must be a non-negative integer, got '" + text + "'");
  return std::stoul(text);
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + text + "'");
}

struct Pipeline {
  AtlasInput input;
  AtlasOptions options;
};

Pipeline configure(const PipelineFlags& f, const ProblemFile& pf) {
  Pipeline p;
  p.input.ring = pf.ring;
  p.input.base = pf.polys;
  if (pf.formula)
    p.input.formula = pf.formula;
  else if (pf.sigma)
    p.input.sigma = pf.sigma;
  else
    throw std::invalid_argument("the problem needs sigma lines or a formula");

  if (const auto v = pick(f.delta, pf, "delta"); !v.empty()) p.options.delta = parse_rational(v);
  if (const auto v = pick(f.refine_rounds, pf, "refine_rounds"); !v.empty())
    p.options.refine_rounds = static_cast<unsigned>(parse_unsigned(v, "refine_rounds"));
  if (const auto v = pick(f.grid_res, pf, "grid_res"); !v.empty()) {
    p.options.grid.resolution = parse_rational(v);
    if (p.options.grid.resolution <= 0) throw std::invalid_argument("grid resolution must be positive");
  }
  if (const auto v = pick("", pf, "window"); !v.empty()) p.options.grid.window = parse_rational(v);
  if (const auto v = pick("", pf, "sample_budget"); !v.empty())
    p.options.sample_budget = parse_unsigned(v, "sample_budget");
  if (const auto v = pick(f.omega, pf, "omega"); !v.empty()) p.input.omega = parse_rational(v);
  p.input.boxed = f.boxed || (pf.options.count("boxed") && parse_bool(pf.options.at("boxed")));

  const std::string mode = pick(f.mode, pf, "mode");
  if (mode.empty() || mode == "exact") {
    p.options.method = FiberMethod::ExactUnivariate;
    if (pf.ring.n != 1)
      throw std::invalid_argument("unsupported mode: exact mode needs exactly one parameter (n = 1), got n = " +
                                  std::to_string(pf.ring.n));
  } else if (mode == "grid") {
    p.options.method = FiberMethod::GridOracle;
  } else {
    throw std::invalid_argument("unknown mode '" + mode + "' (expected exact or grid)");
  }
  return p;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-")
    out << content;
  else
    write_file_atomic(path, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_pipeline(const std::string& which, const PipelineFlags& f, std::ostream& out) {
  const ProblemFile pf = load_problem(f.file);
  const Pipeline p = configure(f, pf);
  const AtlasReport report = run_atlas(p.input, p.options);

  // Everything is rendered first so a failed write leaves nothing behind.
  std::ostringstream table;
  Json j;
  if (which == "atlas") {
    print_table(table, report);
    j = to_json(report);
  } else if (which == "sprime") {
    table << "# closed perturbation at delta " << rational_text(report.delta_used) << '\n';
    table << "vars m=" << report.s_prime.ring.m << " n=" << report.s_prime.ring.n << '\n';
    print_problem(table, report.s_prime);
    j["delta"] = rational_text(report.delta_used);
    j["set"] = to_json(report.s_prime);
  } else if (which == "critical") {
    std::size_t c1 = 0;
    for (const auto& cs : report.critical) c1 += cs.kind == CriticalSystem::Kind::C1;
    table << "delta " << rational_text(report.delta_used) << ": " << report.critical.size() << " systems (" << c1
          << " C1, " << report.critical.size() - c1 << " C2)\n";
    Json arr = Json::array();
    for (const auto& cs : report.critical) arr.push_back(to_json(cs));
    j["delta"] = rational_text(report.delta_used);
    j["systems"] = arr;
  } else {
    table << "delta " << rational_text(report.delta_used) << ": " << report.g.defining.size()
          << " defining polynomials, " << report.g.roots.size() << " real roots\n";
    for (const auto& d : report.g.defining) table << "  " << d.to_string("Y1") << '\n';
    j["delta"] = rational_text(report.delta_used);
    j["discriminant"] = to_json(report.g);
  }
  std::string csv;
  if (!f.csv.empty()) {
    std::ostringstream c;
    write_cells_csv(c, report);
    csv = c.str();
  }
  if (f.json != "-") out << table.str();
  emit(f.json, dump(j), out);
  if (!f.csv.empty()) write_file_atomic(f.csv, csv);
  return exit_code::ok;
}

int cmd_bounds(const std::string& name, const std::vector<std::string>& words, const std::string& c_flag,
               const std::string& json, std::ostream& out) {
  if (name == "list") {
    for (const auto& b : bound_registry()) {
      out << b.name << "  " << b.symbolic << "  [";
      for (std::size_t i = 0; i < b.params.size(); ++i) out << (i ? " " : "") << b.params[i].name;
      out << " c]\n";
    }
    return exit_code::ok;
  }
  BoundParams params;
  std::string resolved = name;
  BigInt c = 1;
  if (!c_flag.empty()) c = BigInt(c_flag);
  for (const auto& w : words) {
    const auto eq = w.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + w + "'");
    const std::string key = w.substr(0, eq), value = w.substr(eq + 1);
    if (key == "scheme") {
      resolved = "count_" + scheme_name(parse_count_scheme(value));
      continue;
    }
    BigInt v;
    if (v.set_str(value, 10) != 0) throw std::invalid_argument("parameter " + key + " must be an integer");
    if (key == "c")
      c = v;
    else
      params[key] = v;
  }
  if (resolved == "count") throw std::invalid_argument("count needs scheme=pprime_paper|pprime_impl|minors_paper|zsets");
  const BoundRow row = evaluate_bound(resolved, params, c);
  if (json != "-") print_table(out, row);
  emit(json, dump(to_json(row)), out);
  return exit_code::ok;
}

int cmd_lift(const std::string& file, const std::string& json, const std::string& out_path, std::ostream& out) {
  const ProblemFile pf = load_problem(file);
  if (pf.ring.n != 0) throw std::invalid_argument("lift inputs use X variables only");
  const std::size_t m = pf.ring.m;
  std::vector<SLPProgram> progs;
  for (const auto& src : pf.poly_sources) {
    try {
      progs.push_back(parse_slp(src.text, m));
    } catch (const ParseError& e) {
      throw e.at_line(src.line, src.column - 1);
    }
  }
  // Atoms the formula introduced beyond the poly lines get programs from their expanded form.
  for (std::size_t k = progs.size(); k < pf.polys.size(); ++k) progs.push_back(parse_slp(pf.polys[k].to_string(), m));
  Formula formula;
  if (pf.formula) {
    formula = *pf.formula;
  } else if (pf.sigma) {
    std::vector<Formula> parts;
    for (const auto& sc : *pf.sigma) parts.push_back(realization_formula(sc));
    formula = Formula::disj(std::move(parts));
  } else {
    throw std::invalid_argument("the problem needs sigma lines or a formula");
  }
  const LiftedSystem ls = lift(progs, formula);
  const LiftReport check = verify_lift(ls, progs, formula);

  std::ostringstream system;
  print_problem(system, ls);
  std::ostringstream summary;
  summary << "programs " << progs.size() << ", m " << ls.m() << ", a " << ls.a() << ", equations "
          << ls.equations.size() << '\n';
  const auto names = ls.variable_names();
  for (std::size_t k = 0; k < progs.size(); ++k) summary << "  P" << k + 1 << ": " << describe(progs[k]) << '\n';
  for (const auto& e : ls.equations) summary << "  " << e.to_string(names) << " = 0\n";
  summary << "verification: symbolic " << (check.symbolic_ok ? "ok" : "FAILED") << ", samples "
          << check.samples.size() - check.sample_failures << "/" << check.samples.size() << '\n';

  if (!out_path.empty()) write_file_atomic(out_path, system.str());
  if (json != "-") {
    out << summary.str();
    if (out_path.empty()) out << system.str();
  }
  emit(json, dump(to_json(ls, check)), out);
  return check.passed() ? exit_code::ok : exit_code::failure;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp + "'");
    f << content;
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write to '" + tmp + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move output into '" + path + "': " + ec.message());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibre census of one-parameter semi-algebraic families", "semifib"};
  app.require_subcommand(1);

  PipelineFlags atlas_f, sprime_f, critical_f, eliminate_f;
  auto* atlas = app.add_subcommand("atlas", "cells of the parameter line and b0 of each fibre");
  add_pipeline_flags(atlas, atlas_f);
  auto* sprime = app.add_subcommand("sprime", "closed perturbed set used by the atlas");
  add_pipeline_flags(sprime, sprime_f);
  auto* critical = app.add_subcommand("critical", "critical-point systems of every stratum");
  add_pipeline_flags(critical, critical_f);
  auto* eliminate = app.add_subcommand("eliminate", "discriminant polynomials and their real roots");
  add_pipeline_flags(eliminate, eliminate_f);

  std::string bound_name, bound_c, bound_json;
  std::vector<std::string> bound_params;
  auto* bounds = app.add_subcommand("bounds", "evaluate a bound formula ('bounds list' shows all)");
  bounds->add_option("name", bound_name, "bound name")->required();
  bounds->add_option("params", bound_params, "key=value parameters");
  bounds->add_option("--c", bound_c, "constant standing in for the O() constant (default 1)");
  bounds->add_option("--json", bound_json, "write the JSON row here ('-' for stdout)");

  std::string lift_file, lift_json, lift_out;
  auto* liftc = app.add_subcommand("lift", "rewrite a formula over SLP polynomials as trinomial equations");
  liftc->add_option("file", lift_file, "problem file with poly and formula lines")->required();
  liftc->add_option("--json", lift_json, "write JSON metadata here ('-' for stdout)");
  liftc->add_option("--out", lift_out, "write the lifted system as a problem file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::bad_input;
  }

  try {
    if (atlas->parsed()) return cmd_pipeline("atlas", atlas_f, out);
    if (sprime->parsed()) return cmd_pipeline("sprime", sprime_f, out);
    if (critical->parsed()) return cmd_pipeline("critical", critical_f, out);
    if (eliminate->parsed()) return cmd_pipeline("eliminate", eliminate_f, out);
    if (bounds->parsed()) return cmd_bounds(bound_name, bound_params, bound_c, bound_json, out);
    if (liftc->parsed()) return cmd_lift(lift_file, lift_json, lift_out, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::bad_input;
  } catch (const DegenerateInput& e) {
    err << "degenerate input: " << e.what() << '\n';
    return exit_code::degenerate;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_input;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_input;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  return exit_code::failure;
}

}  // namespace semifib
