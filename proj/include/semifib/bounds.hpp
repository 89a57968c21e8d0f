#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semifib/rational.hpp"

namespace semifib {

// Closed-form upper bounds with the unspecified big-O constant exposed as c.
// Every function is exact; results whose size would exceed
// kMaxBoundBits throw std::overflow_error instead of exhausting memory.
inline constexpr unsigned long kMaxBoundBits = 1ul << 27;

BigInt bound_main(const BigInt& m, const BigInt& n, const BigInt& s, const BigInt& d, const BigInt& c);
BigInt bound_main_precise(const BigInt& m, const BigInt& n, const BigInt& s, const BigInt& d,
                          const BigInt& c);
BigInt bound_lists(const BigInt& m, const BigInt& s, const BigInt& d, const BigInt& c);
BigInt bound_fewnomial(const BigInt& m, const BigInt& r, const BigInt& c);
BigInt bound_additive(const BigInt& m, const BigInt& a, const BigInt& c);
BigInt bound_pfaffian(const BigInt& m, const BigInt& n, const BigInt& s, const BigInt& r,
                      const BigInt& alpha, const BigInt& beta, const BigInt& c);

enum class CountScheme { PPrimePaper, PPrimeImpl, MinorsPaper, ZSets };
CountScheme parse_count_scheme(const std::string& name);
std::string scheme_name(CountScheme scheme);
BigInt count_family(const BigInt& s, const BigInt& m, CountScheme scheme);

struct MetricRadius {
  BigInt value;
  std::optional<std::string> warning;  // set when M < 2 or d < 2
  std::string statement;
};
MetricRadius metric_radius(const BigInt& M, const BigInt& d, const BigInt& m, const BigInt& c);

BigInt binomial(const BigInt& n, unsigned long k);

class UnknownBound : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using BoundParams = std::map<std::string, BigInt>;

struct BoundParam {
  std::string name;
  long minimum;
};

struct BoundRow {
  std::string name;
  std::string symbolic;
  std::vector<std::pair<std::string, BigInt>> params;  // declaration order
  BigInt c;
  BigInt value;
  std::optional<std::string> warning;
  std::optional<std::string> statement;
};

struct BoundExpr {
  std::string name;
  std::string symbolic;
  std::vector<BoundParam> params;  // c is implicit, minimum 1
  BoundRow (*evaluate)(const BoundExpr&, const BoundParams&, const BigInt& c);

  BoundRow value(const BoundParams& params, const BigInt& c) const;
};

const std::vector<BoundExpr>& bound_registry();
const BoundExpr& find_bound(const std::string& name);

// Looks the bound up, checks names and minimums, evaluates.
BoundRow evaluate_bound(const std::string& name, const BoundParams& params, const BigInt& c = 1);

}  // namespace semifib
