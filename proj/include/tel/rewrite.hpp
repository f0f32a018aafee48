#pragma once

#include <string>
#include <vector>

#include "tel/core.hpp"

namespace tel {

/* One applied rewrite: rule group name, path of child indices from the root
 * (0 = lhs, 1 = rhs), and the subformula before/after. Replaying the steps
 * from the input reproduces the output. */
struct RewriteStep {
  std::string rule;
  std::vector<int> path;
  FormulaPtr before;
  FormulaPtr after;
};
using RewriteTrace = std::vector<RewriteStep>;

/* Pushes negations inward. Letters mode eliminates them entirely via
 * !a = disjunction of the other letters; Props mode stops at atoms.
 * A letters-mode singleton alphabet keeps !a (it has no positive equivalent). */
FormulaPtr negation_free(const FormulaPtr& f, const Alphabet& sigma,
                         RewriteTrace* trace = nullptr);

/* Folds nested shifts, distributes shifts through connectives, modalities and
 * quantifiers (renaming binders the shift term mentions), folds constants.
 * Output has shifts only directly above atoms. */
FormulaPtr normalize_shifts(const FormulaPtr& f, RewriteTrace* trace = nullptr);

/* Expands box/diamond with constant bounds into explicit chains while the
 * expansion stays within size_guard formula nodes. */
FormulaPtr expand_constant_modalities(const FormulaPtr& f, long long size_guard = 256,
                                      RewriteTrace* trace = nullptr);

/* One unfolding step of the quantifier fixpoint laws. */
FormulaPtr unfold_exists(const FormulaPtr& f);  // NotExistsRooted unless Exists
FormulaPtr unfold_forall(const FormulaPtr& f);  // NotForallRooted unless Forall

/* Bounded fixpoint sweep of local identities: unit windows, double negation,
 * idempotence, top/bottom units, constant window composition, shift folding. */
FormulaPtr simplify(const FormulaPtr& f, RewriteTrace* trace = nullptr,
                    int max_sweeps = 8);

}  // namespace tel
