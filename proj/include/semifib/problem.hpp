#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semifib/formula.hpp"
#include "semifib/semialg.hpp"

namespace semifib {

struct SourceLine {
  std::string text;
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based column of text within the line
};

/// Problem description:
///
///   vars m=1 n=1 [s=1]
///   poly X1^2 + Y1 - 1
///   sigma 0            (or: formula P1 = 0 and X1 >= 0)
///   option delta=1/64
///
/// '#' starts a comment. Errors are ParseError with line and column set.
struct ProblemFile {
  std::optional<Ring> declared;  // from the vars line
  std::optional<std::size_t> declared_s;
  Ring ring;                     // declared, or inferred from the polys
  std::vector<SourceLine> poly_sources;
  std::vector<Polynomial> polys;  // base family; a formula may append members
  std::optional<std::vector<SignCondition>> sigma;
  std::optional<SourceLine> formula_source;
  std::optional<Formula> formula;
  std::map<std::string, std::string> options;
  std::map<std::string, std::size_t> option_lines;
};

ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::string& path);

// Accepted option keys.
const std::vector<std::string>& problem_option_keys();

}  // namespace semifib
