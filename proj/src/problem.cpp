#include "semifib/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "semifib/syntax.hpp"

namespace semifib {

namespace {

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

std::size_t parse_count(const std::string& value, std::size_t line, std::size_t column) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected a non-negative integer, got '" + value + "'", column, line);
  return std::stoul(value);
}

// key=value pairs separated by blanks; columns are 1-based within the line.
std::vector<std::pair<SourceLine, std::string>> key_values(std::string_view rest, std::size_t line, std::size_t base) {
  std::vector<std::pair<SourceLine, std::string>> out;
  std::size_t i = 0;
  while ((i = skip_space(rest, i)) < rest.size()) {
    std::size_t j = i;
    while (j < rest.size() && !std::isspace(static_cast<unsigned char>(rest[j]))) ++j;
    const std::string_view word = rest.substr(i, j - i);
    const auto eq = word.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == word.size())
      throw ParseError("expected key=value, got '" + std::string(word) + "'", base + i, line);
    out.push_back({SourceLine{std::string(word.substr(0, eq)), line, base + i}, std::string(word.substr(eq + 1))});
    i = j;
  }
  return out;
}

SignCondition parse_sigma(std::string_view rest, std::size_t line, std::size_t base) {
  SignCondition sc;
  std::size_t i = 0;
  while (i < rest.size()) {
    const char c = rest[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < rest.size() && !std::isspace(static_cast<unsigned char>(rest[j])) && rest[j] != ',' && rest[j] != ')') ++j;
    const std::string_view w = rest.substr(i, j - i);
    if (w == "0")
      sc.signs.push_back(0);
    else if (w == "1" || w == "+1" || w == "+")
      sc.signs.push_back(1);
    else if (w == "-1" || w == "-")
      sc.signs.push_back(-1);
    else
      throw ParseError("sign entries must be -1, 0 or 1, got '" + std::string(w) + "'", base + i, line);
    i = j;
  }
  if (sc.signs.empty()) throw ParseError("empty sign vector", base, line);
  return sc;
}

}  // namespace

const std::vector<std::string>& problem_option_keys() {
  static const std::vector<std::string> keys{"delta",  "refine_rounds", "mode",   "grid_res",
                                             "boxed",  "omega",         "window", "sample_budget"};
  return keys;
}

ProblemFile parse_problem(std::string_view text) {
  ProblemFile pf;
  std::vector<SourceLine> sigma_sources;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    const std::size_t k0 = skip_space(line, 0);
    if (k0 == line.size()) {
      if (end == text.size()) break;
      continue;
    }
    std::size_t k1 = k0;
    while (k1 < line.size() && !std::isspace(static_cast<unsigned char>(line[k1]))) ++k1;
    const std::string keyword(line.substr(k0, k1 - k0));
    const std::size_t body = skip_space(line, k1);
    const std::string_view rest = line.substr(body);
    const std::size_t col = body + 1;

    if (keyword == "vars") {
      if (pf.declared) throw ParseError("duplicate vars line", k0 + 1, line_no);
      if (!pf.poly_sources.empty()) throw ParseError("vars must precede poly lines", k0 + 1, line_no);
      Ring r;
      bool has_m = false;
      for (const auto& [key, value] : key_values(rest, line_no, col)) {
        if (key.text == "m") {
          r.m = parse_count(value, line_no, key.column);
          has_m = true;
        } else if (key.text == "n") {
          r.n = parse_count(value, line_no, key.column);
        } else if (key.text == "s") {
          pf.declared_s = parse_count(value, line_no, key.column);
        } else {
          throw ParseError("unknown vars key '" + key.text + "'", key.column, line_no);
        }
      }
      if (!has_m) throw ParseError("vars needs m=<int>", col, line_no);
      pf.declared = r;
    } else if (keyword == "poly") {
      if (rest.empty()) throw ParseError("poly needs an expression", col, line_no);
      pf.poly_sources.push_back({std::string(rest), line_no, col});
    } else if (keyword == "sigma") {
      sigma_sources.push_back({std::string(rest), line_no, col});
    } else if (keyword == "formula") {
      if (pf.formula_source) throw ParseError("only one formula line is allowed", k0 + 1, line_no);
      if (rest.empty()) throw ParseError("formula needs a body", col, line_no);
      pf.formula_source = SourceLine{std::string(rest), line_no, col};
    } else if (keyword == "option") {
      for (const auto& [key, value] : key_values(rest, line_no, col)) {
        const auto& keys = problem_option_keys();
        if (std::find(keys.begin(), keys.end(), key.text) == keys.end())
          throw ParseError("unknown option '" + key.text + "'", key.column, line_no);
        pf.options[key.text] = value;
        pf.option_lines[key.text] = line_no;
      }
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", k0 + 1, line_no);
    }
    if (end == text.size()) break;
  }

  if (pf.formula_source && !sigma_sources.empty())
    throw ParseError("give either sigma lines or a formula, not both", pf.formula_source->column,
                     pf.formula_source->line);

  // Parse polynomials once the ring is known.
  std::vector<Expr> exprs;
  for (const auto& src : pf.poly_sources) {
    try {
      exprs.push_back(parse_expr(src.text));
    } catch (const ParseError& e) {
      throw e.at_line(src.line, src.column - 1);
    }
  }
  if (pf.declared) {
    pf.ring = *pf.declared;
  } else {
    for (const auto& e : exprs) {
      const Ring r = infer_ring(e);
      pf.ring.m = std::max(pf.ring.m, r.m);
      pf.ring.n = std::max(pf.ring.n, r.n);
    }
  }
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    try {
      pf.polys.push_back(to_polynomial(exprs[i], pf.ring));
    } catch (const ParseError& e) {
      throw e.at_line(pf.poly_sources[i].line, pf.poly_sources[i].column - 1);
    }
  }
  if (pf.declared_s && *pf.declared_s != pf.polys.size())
    throw ParseError("vars declares s=" + std::to_string(*pf.declared_s) + " but " +
                         std::to_string(pf.polys.size()) + " poly lines follow",
                     1, pf.poly_sources.empty() ? 1 : pf.poly_sources.back().line);

  if (!sigma_sources.empty()) {
    std::vector<SignCondition> sigma;
    for (const auto& src : sigma_sources) {
      SignCondition sc = parse_sigma(src.text, src.line, src.column);
      if (sc.size() != pf.polys.size())
        throw ParseError("sign vector has " + std::to_string(sc.size()) + " entries for " +
                             std::to_string(pf.polys.size()) + " polynomials",
                         src.column, src.line);
      if (std::find(sigma.begin(), sigma.end(), sc) == sigma.end()) sigma.push_back(std::move(sc));
    }
    std::sort(sigma.begin(), sigma.end());
    pf.sigma = std::move(sigma);
  }
  if (pf.formula_source) {
    try {
      pf.formula = parse_formula(pf.formula_source->text, pf.ring, pf.polys);
    } catch (const ParseError& e) {
      throw e.at_line(pf.formula_source->line, pf.formula_source->column - 1);
    }
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace semifib
