#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tel/core.hpp"
#include "tel/words.hpp"

namespace tel {

/* --- LTL over letters-mode lasso words ------------------------------- */

enum class LTLKind {
  Atom, Not, And, Or, Next, Finally, Globally,
  Until, WeakUntil, StrongRelease, Release,
};

struct LTLNode;
using LTLPtr = std::shared_ptr<const LTLNode>;

struct LTLNode {
  LTLKind kind;
  std::string name;  // Atom
  LTLPtr lhs, rhs;
};

LTLPtr ltl_atom(std::string a);
LTLPtr ltl_not(LTLPtr f);
LTLPtr ltl_and(LTLPtr a, LTLPtr b);
LTLPtr ltl_or(LTLPtr a, LTLPtr b);
LTLPtr ltl_next(LTLPtr f);
LTLPtr ltl_finally(LTLPtr f);
LTLPtr ltl_globally(LTLPtr f);
LTLPtr ltl_until(LTLPtr a, LTLPtr b);
LTLPtr ltl_weak_until(LTLPtr a, LTLPtr b);
LTLPtr ltl_strong_release(LTLPtr a, LTLPtr b);
LTLPtr ltl_release(LTLPtr a, LTLPtr b);

/* Exact evaluation by fixed point over the word's canonical positions.
 * Temporal offsets k start at 0. */
bool ltl_eval(const LassoWord& w, long long i, const LTLPtr& f);

FormulaPtr ltl_to_tel(const LTLPtr& f);

/* Grammar: atoms, '!', '&', '|', '->', prefix X F G, infix U W M R
 * (right-associative, binding between '!' and '&'), parentheses. */
LTLPtr parse_ltl(const std::string& text, const Alphabet& alphabet);
std::string print_ltl(const LTLPtr& f);

/* --- TCL: propositional logic + Allen operators over props words ------ */

enum class AllenKind { Meets, Before, StartedBy, FinishedBy, Contains, Overlaps };

enum class TCLKind { Atom, Not, And, Or, Allen };

struct TCLNode;
using TCLPtr = std::shared_ptr<const TCLNode>;

struct TCLNode {
  TCLKind kind;
  AllenKind allen = AllenKind::Meets;
  std::string name;  // Atom
  TCLPtr lhs, rhs;
};

TCLPtr tcl_atom(std::string p);
TCLPtr tcl_not(TCLPtr f);
TCLPtr tcl_and(TCLPtr a, TCLPtr b);
TCLPtr tcl_or(TCLPtr a, TCLPtr b);
TCLPtr tcl_allen(AllenKind k, TCLPtr a, TCLPtr b);

/* Exact evaluation: segment boundaries searched over [s+1, l+p+1], the final
 * co-finite segment checked on the remaining prefix plus the whole loop. */
bool tcl_eval(const LassoWord& w, long long s, const TCLPtr& f);

FormulaPtr tcl_to_tel(const TCLPtr& f);

/* Block templates: an existentially quantified chain of consecutive windows,
 * each uniformly satisfying its part. block_open leaves the last window
 * unbounded. */
FormulaPtr block_closed(const std::vector<FormulaPtr>& parts);
FormulaPtr block_open(const std::vector<FormulaPtr>& parts);

/* Grammar: atoms, '!', '&', '|', parentheses, and infix Allen operators
 * spelled A L B E D O (binding between '!' and '&'). */
TCLPtr parse_tcl(const std::string& text, const Alphabet& alphabet);
std::string print_tcl(const TCLPtr& f);

}  // namespace tel
