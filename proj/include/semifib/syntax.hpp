#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semifib/polynomial.hpp"

namespace semifib {

// Error raised by every text front end; column is 1-based, line is 0 when
// the input was a single string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t column, std::size_t line = 0);
  std::size_t column() const { return column_; }
  std::size_t line() const { return line_; }
  ParseError at_line(std::size_t line, std::size_t column_offset = 0) const;
  const std::string& bare_message() const { return bare_; }

 private:
  std::string bare_;
  std::size_t column_;
  std::size_t line_;
};

struct Token {
  enum class Kind { Number, Identifier, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text);

// Syntax tree of an arithmetic expression over X1.., Y1.. and family
// references P1.. (the latter only where a resolver is supplied).
struct Expr {
  enum class Kind { Number, Variable, Reference, Add, Sub, Mul, Pow, Neg };
  Kind kind = Kind::Number;
  Rational value;            // Number
  char block = 'X';          // Variable: 'X' or 'Y'
  std::size_t index = 0;     // Variable (0-based within block) / Reference (0-based)
  unsigned exponent = 0;     // Pow
  std::vector<Expr> args;
  std::size_t column = 0;
};

class ExprParser {
 public:
  explicit ExprParser(const std::vector<Token>& tokens, std::size_t start = 0)
      : tokens_(tokens), pos_(start) {}

  Expr parse_expression();
  std::size_t position() const { return pos_; }
  const Token& peek() const { return tokens_[pos_]; }

 private:
  Expr parse_term();
  Expr parse_unary();
  Expr parse_power();
  Expr parse_atom();
  const Token& next() { return tokens_[pos_++]; }
  bool accept_symbol(std::string_view s);

  const std::vector<Token>& tokens_;
  std::size_t pos_;
};

using ReferenceResolver = std::function<Polynomial(std::size_t index, std::size_t column)>;

// Smallest ring containing every variable of the tree.
Ring infer_ring(const Expr& e);
Polynomial to_polynomial(const Expr& e, Ring ring, const ReferenceResolver& resolver = {});

Expr parse_expr(std::string_view text);
// Parses the shared polynomial syntax; ring inferred when not given.
Polynomial parse_polynomial(std::string_view text, std::optional<Ring> ring = std::nullopt);

}  // namespace semifib
