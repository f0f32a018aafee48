#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tel/core.hpp"
#include "tel/words.hpp"

namespace tel {

/* Product letters pair a top and a bottom component into one flat alphabet
 * symbol `top__bottom`. Dotted decorations are spelled with a `d` prefix:
 * `d0` for a single dot, `dd0` for a double dot. */
std::string product_letter(const std::string& top, const std::string& bottom);

/* Conjunction of shifted letter atoms: (w[1] & w[2]@1 & ... & w[k]@(k-1)) @ s,
 * satisfied at position 1 exactly by Sigma^s w Sigma^omega. */
FormulaPtr word_block(const std::vector<std::string>& w, long long s);

/* --- Buchi run encodings ------------------------------------------------ */

struct BuchiAutomaton {
  std::vector<std::string> states;
  std::vector<std::string> letters;
  std::string initial;
  std::vector<std::array<std::string, 3>> transitions;  // (state, letter, state)
  std::vector<std::string> accepting;
};

/* JSON shape: {states, alphabet, initial, transitions:[[q,a,p]], accepting}. */
BuchiAutomaton buchi_from_json(const nlohmann::json& j);
void validate_automaton(const BuchiAutomaton& a);

/* Letters-mode alphabet of all `q__a` tiles. */
Alphabet buchi_alphabet(const BuchiAutomaton& a);

/* Characterizes runs: tile 1 carries the initial state and consecutive tiles
 * obey the transition relation. States with no outgoing edge on their letter
 * contribute an empty disjunction, i.e. a contradiction. */
FormulaPtr encode_runs(const BuchiAutomaton& a);

/* forall y exists x (accepting tile @ (x+y)): accepting states occur
 * infinitely often. */
FormulaPtr encode_acceptance(const BuchiAutomaton& a);

/* --- word-sequence correspondence -------------------------------------- */

enum class CorrespondenceVariant { Exact, CountOnly };

/* Alphabet for the two-zone correspondence layout: every base letter of the
 * words plus its `d`/`dd` decorated forms, and the markers `cent`, `hash`. */
Alphabet correspondence_alphabet(const std::vector<std::string>& words);

/* Closed formula over correspondence_alphabet satisfied exactly by words
 *   u_1...u_k cent v_1...v_j hash^omega
 * where all u_i (leading letter d-dotted) and v_i (dd-dotted) are drawn from
 * `words`, and: Exact demands the two sequences be identical, CountOnly only
 * that k = j. */
FormulaPtr lemma_correspondence(const std::vector<std::string>& words,
                                CorrespondenceVariant variant);

/* --- PCP ----------------------------------------------------------------- */

struct PCPInstance {
  std::vector<std::pair<std::string, std::string>> pairs;  // non-empty binary words
};

/* JSON shape: {pairs:[["01","01"], ...]}. */
PCPInstance pcp_from_json(const nlohmann::json& j);
void validate_instance(const PCPInstance& inst);

/* Fixed letters-mode alphabet: products of {0,1,d0,d1,dd0,dd1,pad} plus the
 * markers cent and hash. */
Alphabet pcp_alphabet();

/* Closed formula satisfiable iff the instance has a solution: a domino zone,
 * cent, a doubly-decorated solution-string zone, then hash^omega. Generated
 * matcher disjunctions grow exponentially in domino length; instances whose
 * formula would exceed node_budget tree nodes are rejected. */
FormulaPtr pcp_encode(const PCPInstance& inst, long long node_budget = 1'000'000);

/* The witness word for a chosen index sequence. Satisfies pcp_encode exactly
 * when the sequence solves the instance (not checked here). */
LassoWord pcp_witness(const PCPInstance& inst, const std::vector<int>& indices);

}  // namespace tel
