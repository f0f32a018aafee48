#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "tel/core.hpp"

namespace tel {

/* Concrete syntax, tightest first:
 *   phi @ t            shift (postfix)
 *   !phi               negation
 *   [t] phi, <t> phi   box / diamond; [] phi, <> phi unbounded (expanded)
 *   phi & psi
 *   phi | psi
 *   phi -> psi         right-associative
 *   exists x . phi, forall x . phi   body extends maximally right
 * Terms: identifiers, integer constants >= 1, sums with '+', sugar n*t.
 * Atoms must belong to the alphabet; term identifiers must be bound by a
 * quantifier or listed in free_vars. */
FormulaPtr parse_formula(const std::string& text, const Alphabet& alphabet,
                         const std::set<std::string>& free_vars = {});

std::string print_formula(const FormulaPtr& f);

nlohmann::json formula_to_json(const FormulaPtr& f);
nlohmann::json term_to_json(const TermPtr& t);

}  // namespace tel
