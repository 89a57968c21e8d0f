#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semifib/perturb.hpp"

namespace semifib {

// A stratum is given by the members that vanish on it, sorted ascending.
using Stratum = std::vector<std::size_t>;

// Zero-selections of size <= max_level among `candidates` (all members when
// empty), never containing two members of the same base polynomial. Ordered
// by level, then lexicographically. max_level may not exceed m + n.
std::vector<Stratum> enumerate_strata(const PerturbedFamily& pf, std::size_t max_level,
                                      std::span<const std::size_t> candidates = {});

struct CriticalSystem {
  enum class Kind { C1, C2 };
  Stratum stratum;
  std::vector<Polynomial> active;
  // For C1: the l x l minors of the X-Jacobian, one per choice of l X-columns.
  std::vector<Polynomial> minors;
  Kind kind = Kind::C1;

  // Equations whose common zeros form the critical locus.
  std::vector<Polynomial> equations() const;
};

// Throws std::invalid_argument for an empty equation list.
CriticalSystem critical_system(std::vector<Polynomial> active, std::size_t m, Stratum stratum = {});
CriticalSystem critical_system(const PerturbedFamily& pf, const Stratum& stratum);

std::string kind_name(CriticalSystem::Kind k);

}  // namespace semifib
