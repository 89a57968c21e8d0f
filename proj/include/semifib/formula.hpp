#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semifib/polynomial.hpp"

namespace semifib {

enum class Relation { Less, Equal, Greater, LessEq, GreaterEq };

std::string_view relation_text(Relation r);
bool relation_holds(Relation r, int sign);
// The relation satisfied exactly where r fails, when one exists (= has none).
bool is_closed_relation(Relation r);

// Three-valued truth for evaluation under uncertain signs.
enum class Truth : std::uint8_t { False, True, Unknown };

// Possible signs of a value as a bit set.
namespace signs {
inline constexpr std::uint8_t Neg = 1;
inline constexpr std::uint8_t Zero = 2;
inline constexpr std::uint8_t Pos = 4;
inline constexpr std::uint8_t Any = 7;
inline std::uint8_t of(int s) { return s < 0 ? Neg : (s == 0 ? Zero : Pos); }
}  // namespace signs

/// Negation-free Boolean formula over sign atoms "family[index] REL 0".
class Formula {
 public:
  enum class Kind { True, False, Atom, And, Or };

  static Formula truth(bool value);
  static Formula atom(std::size_t index, Relation relation);
  // Flattening constructors; constants are absorbed.
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);

  Kind kind() const { return kind_; }
  std::size_t index() const { return index_; }
  Relation relation() const { return rel_; }
  const std::vector<Formula>& children() const { return children_; }

  // Negation pushed to the atoms; "P = 0" negates to "P < 0 or P > 0".
  Formula negated() const;
  bool is_closed() const;
  std::set<std::size_t> atom_indices() const;
  std::size_t max_index() const;  // 0 when there are no atoms
  Formula remap(const std::function<std::size_t(std::size_t)>& map) const;

  bool eval(std::span<const int> family_signs) const;
  Truth eval(std::span<const std::uint8_t> possible_signs) const;

  // Shared text syntax; names[i] is printed for atom i (default "P<i+1>").
  std::string to_text(const std::vector<std::string>& names = {}) const;

  bool operator==(const Formula&) const = default;

 private:
  Kind kind_ = Kind::True;
  std::size_t index_ = 0;
  Relation rel_ = Relation::Equal;
  std::vector<Formula> children_;
};

// Parses "expr REL expr" atoms joined by and / or / not, with parentheses,
// true and false. Each atom becomes lhs - rhs REL 0; the polynomial is looked
// up in `family` (also up to sign, flipping the relation) and appended when
// new. P<k> inside expressions refers to family[k-1].
Formula parse_formula(std::string_view text, Ring ring, std::vector<Polynomial>& family);

/// A formula together with the family its atoms index.
struct DefinedSet {
  Ring ring;
  std::vector<Polynomial> family;
  Formula formula;

  bool contains(std::span<const Rational> point) const;
  // Drops family members that no atom uses and renumbers the rest.
  DefinedSet compact() const;
};

}  // namespace semifib
