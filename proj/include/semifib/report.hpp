#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "semifib/atlas.hpp"
#include "semifib/bounds.hpp"
#include "semifib/slp.hpp"

namespace semifib {

// Insertion-ordered so that output is byte-stable for identical input.
using Json = nlohmann::ordered_json;

std::string rational_text(const Rational& q);  // "p/q", "p" for integers

Json to_json(const CriticalSystem& cs);
Json to_json(const DiscriminantSet& g);
Json to_json(const AtlasReport& report);
Json to_json(const BoundRow& row);
Json to_json(const LiftedSystem& ls, const LiftReport& check);
Json to_json(const DefinedSet& set);

void print_table(std::ostream& os, const AtlasReport& report);
void print_table(std::ostream& os, const BoundRow& row);
// The lifted system as a problem file (Y_t in the shared syntax, Y_k_j in comments).
void print_problem(std::ostream& os, const LiftedSystem& ls);
// A defined set as poly lines plus a formula over P1.., parseable again.
void print_problem(std::ostream& os, const DefinedSet& set);

// Cell boundaries and samples as CSV rows: cell,left,right,sample,b0,b0_perturbed
void write_cells_csv(std::ostream& os, const AtlasReport& report);

}  // namespace semifib
