#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "semifib/formula.hpp"
#include "semifib/semialg.hpp"

namespace semifib {

/// eps(i, j) = delta^((2s - i) s + j) for 1 <= i <= 2s, 1 <= j <= s.
/// Larger i means larger value; within one i, smaller j is larger.
class EpsilonLadder {
 public:
  EpsilonLadder(std::size_t s, Rational delta);

  std::size_t s() const { return s_; }
  const Rational& delta() const { return delta_; }
  unsigned long exponent(std::size_t i, std::size_t j) const;
  Rational value(std::size_t i, std::size_t j) const;
  // All 2s^2 values from eps(2s, 1) down to eps(1, s).
  std::vector<Rational> chain() const;

 private:
  std::size_t s_;
  Rational delta_;
};

struct Member {
  std::size_t i;     // ladder row, 1..2s
  std::size_t j;     // base index, 1..s
  int shift;         // +1 for P_j + eps(i, j), -1 for P_j - eps(i, j)
};

/// The 4s^2 shifted copies P_j +- eps(i, j). Formulas built here index the
/// combined family: the members first, then the base polynomials.
class PerturbedFamily {
 public:
  PerturbedFamily(std::vector<Polynomial> base, EpsilonLadder ladder);

  const std::vector<Polynomial>& base() const { return base_; }
  const EpsilonLadder& ladder() const { return ladder_; }
  Ring ring() const { return ring_; }
  std::size_t s() const { return base_.size(); }

  std::size_t member_count() const { return members_.size(); }
  std::size_t paper_count() const { return 2 * s() * s(); }
  const Member& member(std::size_t k) const { return meta_[k]; }
  const Polynomial& member_polynomial(std::size_t k) const { return members_[k]; }
  const std::vector<Polynomial>& members() const { return members_; }
  std::size_t member_index(std::size_t i, std::size_t j, int shift) const;
  std::size_t base_index(std::size_t j) const { return members_.size() + j - 1; }

  // members followed by base
  std::vector<Polynomial> combined() const;
  std::string member_name(std::size_t k) const;
  std::vector<std::string> combined_names() const;

 private:
  Ring ring_;
  std::vector<Polynomial> base_;
  EpsilonLadder ladder_;
  std::vector<Polynomial> members_;
  std::vector<Member> meta_;
};

// Closed thickening of the realization of sc (a sign condition on the base).
Formula sigma_plus(const SignCondition& sc, const PerturbedFamily& pf);
// Open thickening with the odd ladder rows and strict atoms.
Formula sigma_minus(const SignCondition& sc, const PerturbedFamily& pf);

/// S' as a closed formula over the combined family.
struct ClosedSetDescription {
  DefinedSet set;
};

// The induction before the closed rewrite: a point lies in S' when for some
// level l it is in R(sigma+) for a sigma in sigma_set of level l, and in no
// R(tau-) for a realizable tau outside sigma_set of a larger level.
// `realizable` lists the realizable sign conditions of the base family.
Formula build_unrewritten(std::span<const SignCondition> sigma_set, std::span<const SignCondition> realizable,
                          const PerturbedFamily& pf);
// Replaces base atoms P_j >= 0 by P_j - eps(2, j) >= 0 and P_j <= 0 by
// P_j + eps(2, j) <= 0; other atoms are kept. Throws on strict base atoms.
Formula rewrite_closed(const Formula& f, const PerturbedFamily& pf);
ClosedSetDescription construct_S_prime(std::span<const SignCondition> sigma_set,
                                       std::span<const SignCondition> realizable, const PerturbedFamily& pf);

struct RankFailure {
  std::size_t witness;
  std::size_t rank;
};

struct RankReport {
  std::size_t level = 0;
  std::size_t checked = 0;
  std::vector<RankFailure> failures;
  bool passed() const { return failures.empty(); }
};

// Exact rank of the Jacobian of the active members (zero entries of sc,
// which is a sign vector over the members) at each witness. Throws
// std::invalid_argument when a witness does not satisfy sc.
RankReport check_rank_genericity(const PerturbedFamily& pf, const SignCondition& sc, std::span<Witness> witnesses);
// Same for an arbitrary family; sc is a sign vector over `family`.
RankReport check_rank_genericity(std::span<const Polynomial> family, const SignCondition& sc,
                                 std::span<Witness> witnesses);

}  // namespace semifib
