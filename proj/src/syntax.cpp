#include "semifib/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace semifib {

ParseError::ParseError(const std::string& message, std::size_t column, std::size_t line)
    : std::runtime_error((line ? "line " + std::to_string(line) + ", " : std::string()) + "column " +
                         std::to_string(column) + ": " + message),
      bare_(message),
      column_(column),
      line_(line) {}

ParseError ParseError::at_line(std::size_t line, std::size_t column_offset) const {
  return ParseError(bare_, column_ + column_offset, line);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), col});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::Identifier, std::string(text.substr(i, j - i)), col});
      i = j;
    } else if ((c == '<' || c == '>' || c == '!') && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({Token::Kind::Symbol, std::string(text.substr(i, 2)), col});
      i += 2;
    } else if (std::string_view("+-*^/()<>=,").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, static_cast<char>(c)), col});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", col);
    }
  }
  out.push_back({Token::Kind::End, "", text.size() + 1});
  return out;
}

bool ExprParser::accept_symbol(std::string_view s) {
  if (peek().kind == Token::Kind::Symbol && peek().text == s) {
    ++pos_;
    return true;
  }
  return false;
}

Expr ExprParser::parse_expression() {
  Expr lhs = parse_term();
  for (;;) {
    const std::size_t col = peek().column;
    Expr::Kind kind;
    if (accept_symbol("+"))
      kind = Expr::Kind::Add;
    else if (accept_symbol("-"))
      kind = Expr::Kind::Sub;
    else
      return lhs;
    Expr node;
    node.kind = kind;
    node.column = col;
    node.args.push_back(std::move(lhs));
    node.args.push_back(parse_term());
    lhs = std::move(node);
  }
}

Expr ExprParser::parse_term() {
  Expr lhs = parse_unary();
  for (;;) {
    const std::size_t col = peek().column;
    if (!accept_symbol("*")) {
      if (peek().kind == Token::Kind::Symbol && peek().text == "/")
        throw ParseError("division is only allowed inside a rational literal p/q", col);
      return lhs;
    }
    Expr node;
    node.kind = Expr::Kind::Mul;
    node.column = col;
    node.args.push_back(std::move(lhs));
    node.args.push_back(parse_unary());
    lhs = std::move(node);
  }
}

Expr ExprParser::parse_unary() {
  const std::size_t col = peek().column;
  if (accept_symbol("-")) {
    Expr node;
    node.kind = Expr::Kind::Neg;
    node.column = col;
    node.args.push_back(parse_unary());
    return node;
  }
  if (accept_symbol("+")) return parse_unary();
  return parse_power();
}

Expr ExprParser::parse_power() {
  Expr base = parse_atom();
  const std::size_t col = peek().column;
  if (!accept_symbol("^")) return base;
  if (peek().kind == Token::Kind::Symbol && peek().text == "-")
    throw ParseError("negative exponent", peek().column);
  if (peek().kind != Token::Kind::Number) throw ParseError("expected a non-negative integer exponent", peek().column);
  const Token& tok = next();
  if (tok.text.size() > 6) throw ParseError("exponent too large", tok.column);
  Expr node;
  node.kind = Expr::Kind::Pow;
  node.column = col;
  node.exponent = static_cast<unsigned>(std::stoul(tok.text));
  node.args.push_back(std::move(base));
  return node;
}

Expr ExprParser::parse_atom() {
  const Token& tok = peek();
  Expr node;
  node.column = tok.column;
  switch (tok.kind) {
    case Token::Kind::Number: {
      ++pos_;
      std::string text = tok.text;
      if (peek().kind == Token::Kind::Symbol && peek().text == "/") {
        ++pos_;
        if (peek().kind != Token::Kind::Number) throw ParseError("expected denominator after '/'", peek().column);
        text += "/" + next().text;
      }
      try {
        node.value = parse_rational(text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), tok.column);
      }
      node.kind = Expr::Kind::Number;
      return node;
    }
    case Token::Kind::Identifier: {
      ++pos_;
      const std::string& id = tok.text;
      const bool indexed = id.size() >= 2 && std::all_of(id.begin() + 1, id.end(), [](char c) {
                             return std::isdigit(static_cast<unsigned char>(c));
                           });
      if (!indexed || (id[0] != 'X' && id[0] != 'Y' && id[0] != 'P'))
        throw ParseError("unknown identifier '" + id + "' (expected X<k>, Y<k> or P<k>)", tok.column);
      const unsigned long k = std::stoul(id.substr(1));
      if (k == 0) throw ParseError("variable indices start at 1", tok.column);
      node.kind = id[0] == 'P' ? Expr::Kind::Reference : Expr::Kind::Variable;
      node.block = id[0];
      node.index = k - 1;
      return node;
    }
    case Token::Kind::Symbol:
      if (tok.text == "(") {
        ++pos_;
        Expr inner = parse_expression();
        if (!accept_symbol(")")) throw ParseError("expected ')'", peek().column);
        return inner;
      }
      throw ParseError("unexpected '" + tok.text + "'", tok.column);
    case Token::Kind::End:
      throw ParseError("unexpected end of input", tok.column);
  }
  throw ParseError("unreachable", tok.column);
}

Ring infer_ring(const Expr& e) {
  Ring r;
  if (e.kind == Expr::Kind::Variable) {
    if (e.block == 'X')
      r.m = e.index + 1;
    else
      r.n = e.index + 1;
  }
  for (const auto& a : e.args) {
    const Ring s = infer_ring(a);
    r.m = std::max(r.m, s.m);
    r.n = std::max(r.n, s.n);
  }
  return r;
}

Polynomial to_polynomial(const Expr& e, Ring ring, const ReferenceResolver& resolver) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return Polynomial::constant(ring, e.value);
    case Expr::Kind::Variable: {
      const std::size_t limit = e.block == 'X' ? ring.m : ring.n;
      if (e.index >= limit)
        throw ParseError(std::string(1, e.block) + std::to_string(e.index + 1) + " is outside the ring (m=" +
                             std::to_string(ring.m) + ", n=" + std::to_string(ring.n) + ")",
                         e.column);
      return Polynomial::variable(ring, e.block == 'X' ? e.index : ring.m + e.index);
    }
    case Expr::Kind::Reference:
      if (!resolver) throw ParseError("family reference P" + std::to_string(e.index + 1) + " not allowed here", e.column);
      return resolver(e.index, e.column);
    case Expr::Kind::Add:
      return to_polynomial(e.args[0], ring, resolver) + to_polynomial(e.args[1], ring, resolver);
    case Expr::Kind::Sub:
      return to_polynomial(e.args[0], ring, resolver) - to_polynomial(e.args[1], ring, resolver);
    case Expr::Kind::Mul:
      return to_polynomial(e.args[0], ring, resolver) * to_polynomial(e.args[1], ring, resolver);
    case Expr::Kind::Pow:
      return to_polynomial(e.args[0], ring, resolver).pow(e.exponent);
    case Expr::Kind::Neg:
      return -to_polynomial(e.args[0], ring, resolver);
  }
  throw std::logic_error("unknown expression node");
}

Expr parse_expr(std::string_view text) {
  const auto tokens = tokenize(text);
  ExprParser parser(tokens);
  Expr e = parser.parse_expression();
  if (parser.peek().kind != Token::Kind::End)
    throw ParseError("unexpected '" + parser.peek().text + "'", parser.peek().column);
  return e;
}

Polynomial parse_polynomial(std::string_view text, std::optional<Ring> ring) {
  const Expr e = parse_expr(text);
  return to_polynomial(e, ring.value_or(infer_ring(e)));
}

}  // namespace semifib
