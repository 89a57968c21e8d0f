#include "semifib/formula.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "semifib/syntax.hpp"

namespace semifib {

std::string_view relation_text(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::Equal: return "=";
    case Relation::Greater: return ">";
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

bool relation_holds(Relation r, int s) {
  switch (r) {
    case Relation::Less: return s < 0;
    case Relation::Equal: return s == 0;
    case Relation::Greater: return s > 0;
    case Relation::LessEq: return s <= 0;
    case Relation::GreaterEq: return s >= 0;
  }
  return false;
}

bool is_closed_relation(Relation r) {
  return r == Relation::Equal || r == Relation::LessEq || r == Relation::GreaterEq;
}

Formula Formula::truth(bool value) {
  Formula f;
  f.kind_ = value ? Kind::True : Kind::False;
  return f;
}

Formula Formula::atom(std::size_t index, Relation relation) {
  Formula f;
  f.kind_ = Kind::Atom;
  f.index_ = index;
  f.rel_ = relation;
  return f;
}

namespace {

Formula combine(std::vector<Formula> parts, Formula::Kind kind) {
  const Formula::Kind unit = kind == Formula::Kind::And ? Formula::Kind::True : Formula::Kind::False;
  const Formula::Kind absorbing = kind == Formula::Kind::And ? Formula::Kind::False : Formula::Kind::True;
  std::vector<Formula> flat;
  for (auto& p : parts) {
    if (p.kind() == absorbing) return Formula::truth(absorbing == Formula::Kind::True);
    if (p.kind() == unit) continue;
    if (p.kind() == kind) {
      for (const auto& c : p.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return Formula::truth(unit == Formula::Kind::True);
  if (flat.size() == 1) return std::move(flat.front());
  return kind == Formula::Kind::And ? Formula::conj(std::move(flat)) : Formula::disj(std::move(flat));
}

}  // namespace

Formula Formula::conj(std::vector<Formula> parts) {
  bool simple = parts.size() >= 2;
  for (const auto& p : parts)
    if (p.kind_ == Kind::True || p.kind_ == Kind::False || p.kind_ == Kind::And) simple = false;
  if (!simple) return combine(std::move(parts), Kind::And);
  Formula f;
  f.kind_ = Kind::And;
  f.children_ = std::move(parts);
  return f;
}

Formula Formula::disj(std::vector<Formula> parts) {
  bool simple = parts.size() >= 2;
  for (const auto& p : parts)
    if (p.kind_ == Kind::True || p.kind_ == Kind::False || p.kind_ == Kind::Or) simple = false;
  if (!simple) return combine(std::move(parts), Kind::Or);
  Formula f;
  f.kind_ = Kind::Or;
  f.children_ = std::move(parts);
  return f;
}

Formula Formula::negated() const {
  switch (kind_) {
    case Kind::True: return truth(false);
    case Kind::False: return truth(true);
    case Kind::Atom:
      switch (rel_) {
        case Relation::Less: return atom(index_, Relation::GreaterEq);
        case Relation::LessEq: return atom(index_, Relation::Greater);
        case Relation::Greater: return atom(index_, Relation::LessEq);
        case Relation::GreaterEq: return atom(index_, Relation::Less);
        case Relation::Equal: return disj({atom(index_, Relation::Less), atom(index_, Relation::Greater)});
      }
      break;
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : children_) parts.push_back(c.negated());
      return kind_ == Kind::And ? disj(std::move(parts)) : conj(std::move(parts));
    }
  }
  return truth(false);
}

bool Formula::is_closed() const {
  if (kind_ == Kind::Atom) return is_closed_relation(rel_);
  return std::all_of(children_.begin(), children_.end(), [](const Formula& c) { return c.is_closed(); });
}

std::set<std::size_t> Formula::atom_indices() const {
  std::set<std::size_t> out;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind_ == Kind::Atom) out.insert(f.index_);
    for (const auto& c : f.children_) walk(c);
  };
  walk(*this);
  return out;
}

std::size_t Formula::max_index() const {
  const auto idx = atom_indices();
  return idx.empty() ? 0 : *idx.rbegin();
}

Formula Formula::remap(const std::function<std::size_t(std::size_t)>& map) const {
  Formula f = *this;
  if (kind_ == Kind::Atom) f.index_ = map(index_);
  for (auto& c : f.children_) c = c.remap(map);
  return f;
}

bool Formula::eval(std::span<const int> s) const {
  switch (kind_) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom:
      if (index_ >= s.size()) throw std::out_of_range("formula atom outside the family");
      return relation_holds(rel_, s[index_]);
    case Kind::And:
      return std::all_of(children_.begin(), children_.end(), [&](const Formula& c) { return c.eval(s); });
    case Kind::Or:
      return std::any_of(children_.begin(), children_.end(), [&](const Formula& c) { return c.eval(s); });
  }
  return false;
}

Truth Formula::eval(std::span<const std::uint8_t> possible) const {
  switch (kind_) {
    case Kind::True: return Truth::True;
    case Kind::False: return Truth::False;
    case Kind::Atom: {
      if (index_ >= possible.size()) throw std::out_of_range("formula atom outside the family");
      bool any_true = false, any_false = false;
      for (int s = -1; s <= 1; ++s) {
        if (!(possible[index_] & signs::of(s))) continue;
        (relation_holds(rel_, s) ? any_true : any_false) = true;
      }
      if (any_true && any_false) return Truth::Unknown;
      return any_true ? Truth::True : Truth::False;
    }
    case Kind::And:
    case Kind::Or: {
      const Truth stop = kind_ == Kind::And ? Truth::False : Truth::True;
      bool unknown = false;
      for (const auto& c : children_) {
        const Truth t = c.eval(possible);
        if (t == stop) return stop;
        if (t == Truth::Unknown) unknown = true;
      }
      if (unknown) return Truth::Unknown;
      return kind_ == Kind::And ? Truth::True : Truth::False;
    }
  }
  return Truth::Unknown;
}

std::string Formula::to_text(const std::vector<std::string>& names) const {
  switch (kind_) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: {
      const std::string name = index_ < names.size() ? names[index_] : "P" + std::to_string(index_ + 1);
      return name + " " + std::string(relation_text(rel_)) + " 0";
    }
    case Kind::And:
    case Kind::Or: {
      std::string out;
      const char* sep = kind_ == Kind::And ? " and " : " or ";
      for (std::size_t k = 0; k < children_.size(); ++k) {
        if (k) out += sep;
        const auto& c = children_[k];
        const bool wrap = c.kind_ == Kind::And || c.kind_ == Kind::Or;
        out += wrap ? "(" + c.to_text(names) + ")" : c.to_text(names);
      }
      return out;
    }
  }
  return "";
}

namespace {

class FormulaParser {
 public:
  FormulaParser(const std::vector<Token>& tokens, Ring ring, std::vector<Polynomial>& family)
      : tokens_(tokens), ring_(ring), family_(family) {}

  Formula parse_all() {
    Formula f = parse_or();
    if (peek().kind != Token::Kind::End) throw ParseError("unexpected '" + peek().text + "'", peek().column);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool is_word(std::string_view w) const { return peek().kind == Token::Kind::Identifier && peek().text == w; }
  bool is_symbol(std::string_view s) const { return peek().kind == Token::Kind::Symbol && peek().text == s; }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (is_word("or")) {
      ++pos_;
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Formula::disj(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_unary()};
    while (is_word("and")) {
      ++pos_;
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Formula::conj(std::move(parts));
  }

  Formula parse_unary() {
    if (is_word("not")) {
      ++pos_;
      return parse_unary().negated();
    }
    if (is_word("true") || is_word("false")) {
      const bool v = peek().text == "true";
      ++pos_;
      return Formula::truth(v);
    }
    if (is_symbol("(")) {
      // Either a parenthesised formula or the start of an arithmetic
      // expression such as "(X1+1)^2 > 0": try the former first.
      const std::size_t saved = pos_;
      const std::size_t saved_family = family_.size();
      try {
        ++pos_;
        Formula inner = parse_or();
        if (is_symbol(")")) {
          ++pos_;
          if (!continues_expression()) return inner;
        }
      } catch (const ParseError&) {
      }
      pos_ = saved;
      family_.resize(saved_family, Polynomial(ring_));
    }
    return parse_comparison();
  }

  bool continues_expression() const {
    if (peek().kind != Token::Kind::Symbol) return false;
    static const std::set<std::string> ops{"+", "-", "*", "^", "<", ">", "=", "<=", ">=", "!="};
    return ops.count(peek().text) > 0;
  }

  Formula parse_comparison() {
    const Polynomial lhs = parse_side();
    const Token op = peek();
    static const std::map<std::string, Relation> rels{{"<", Relation::Less},     {">", Relation::Greater},
                                                      {"=", Relation::Equal},    {"<=", Relation::LessEq},
                                                      {">=", Relation::GreaterEq}};
    const bool not_equal = op.kind == Token::Kind::Symbol && op.text == "!=";
    const auto it = op.kind == Token::Kind::Symbol ? rels.find(op.text) : rels.end();
    if (!not_equal && it == rels.end()) throw ParseError("expected a relation (<, >, =, <=, >=)", op.column);
    ++pos_;
    const Polynomial rhs = parse_side();
    // "0 < q" reads better stored as "q > 0".
    const bool swap = lhs.is_zero() && !rhs.is_zero();
    const Polynomial diff = swap ? rhs : lhs - rhs;
    if (diff.is_constant()) {
      const int s = swap ? -sign(diff.constant_value()) : sign(diff.constant_value());
      return Formula::truth(not_equal ? s != 0 : relation_holds(it->second, s));
    }
    auto [index, flipped] = intern(diff);
    flipped = flipped != swap;
    if (not_equal) return Formula::atom(index, Relation::Equal).negated();
    Relation r = it->second;
    if (flipped) {
      if (r == Relation::Less) r = Relation::Greater;
      else if (r == Relation::Greater) r = Relation::Less;
      else if (r == Relation::LessEq) r = Relation::GreaterEq;
      else if (r == Relation::GreaterEq) r = Relation::LessEq;
    }
    return Formula::atom(index, r);
  }

  Polynomial parse_side() {
    ExprParser parser(tokens_, pos_);
    const Expr e = parser.parse_expression();
    pos_ = parser.position();
    return to_polynomial(e, ring_, [this](std::size_t k, std::size_t column) {
      if (k >= family_.size())
        throw ParseError("reference P" + std::to_string(k + 1) + " outside the family", column);
      return family_[k];
    });
  }

  std::pair<std::size_t, bool> intern(const Polynomial& p) {
    for (std::size_t k = 0; k < family_.size(); ++k) {
      if (family_[k] == p) return {k, false};
      if (family_[k] == -p) return {k, true};
    }
    family_.push_back(p);
    return {family_.size() - 1, false};
  }

  const std::vector<Token>& tokens_;
  Ring ring_;
  std::vector<Polynomial>& family_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, Ring ring, std::vector<Polynomial>& family) {
  const auto tokens = tokenize(text);
  FormulaParser parser(tokens, ring, family);
  return parser.parse_all();
}

bool DefinedSet::contains(std::span<const Rational> point) const {
  if (point.size() != ring.size()) throw std::invalid_argument("point dimension does not match the ring");
  std::vector<int> s(family.size(), 0);
  for (std::size_t k : formula.atom_indices()) s.at(k) = sign_at(family.at(k), point);
  return formula.eval(s);
}

DefinedSet DefinedSet::compact() const {
  const auto used = formula.atom_indices();
  std::map<std::size_t, std::size_t> renumber;
  DefinedSet out{ring, {}, formula};
  for (std::size_t k : used) {
    renumber[k] = out.family.size();
    out.family.push_back(family.at(k));
  }
  out.formula = formula.remap([&](std::size_t k) { return renumber.at(k); });
  return out;
}

}  // namespace semifib
