#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tel/error.hpp"

namespace tel {

/* Time terms over positive discrete time: constants (>= 1), variables and
 * sums. There is no subtraction and no zero. */
enum class TermKind { Const, Var, Sum };

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  long long value = 0;  // Const
  std::string name;     // Var
  TermPtr lhs, rhs;     // Sum
};

using Env = std::map<std::string, long long>;

TermPtr term_const(long long v);
TermPtr term_var(std::string name);
TermPtr term_sum(TermPtr a, TermPtr b);
/* n-fold sum t + ... + t, n >= 1. */
TermPtr term_scaled(long long n, TermPtr t);

bool term_equal(const TermPtr& a, const TermPtr& b);
void collect_term_vars(const TermPtr& t, std::set<std::string>& out);
std::set<std::string> term_vars(const TermPtr& t);
long long term_eval(const TermPtr& t, const Env& env);
TermPtr term_subst(const TermPtr& t, const std::string& var, const TermPtr& repl);
/* Folds constant subsums; canonicalizes (c + rest) ordering is left alone. */
TermPtr term_fold(const TermPtr& t);
std::string print_term(const TermPtr& t);

enum class FKind { Atom, Shift, Not, And, Or, Box, Diamond, Exists, Forall };

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind;
  std::string name;  // Atom symbol, or bound variable of Exists/Forall
  TermPtr term;      // Shift amount, or Box/Diamond window length
  FormulaPtr lhs, rhs;
};

FormulaPtr atom(std::string symbol);
FormulaPtr shift(FormulaPtr f, TermPtr t);
/* Shift by a plain number; shift by 0 is the identity (no node is built). */
FormulaPtr shift(FormulaPtr f, long long k);
FormulaPtr not_(FormulaPtr f);
FormulaPtr and_(FormulaPtr a, FormulaPtr b);
FormulaPtr or_(FormulaPtr a, FormulaPtr b);
FormulaPtr and_all(const std::vector<FormulaPtr>& fs);  // EmptyBlock if empty
FormulaPtr or_all(const std::vector<FormulaPtr>& fs);   // EmptyBlock if empty
FormulaPtr box(TermPtr t, FormulaPtr f);
FormulaPtr box(long long k, FormulaPtr f);
FormulaPtr diamond(TermPtr t, FormulaPtr f);
FormulaPtr diamond(long long k, FormulaPtr f);
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);

/* Derived forms. */
FormulaPtr implies(FormulaPtr a, FormulaPtr b);   // !a | b
FormulaPtr box_inf(FormulaPtr f);                 // f & forall x . f@x, x fresh
FormulaPtr diamond_inf(FormulaPtr f);             // f | exists x . f@x, x fresh

enum class AtomMode { Letters, Props };

class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<std::string> symbols, AtomMode mode);

  bool contains(const std::string& s) const { return lookup_.count(s) != 0; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  AtomMode mode() const { return mode_; }

 private:
  std::vector<std::string> symbols_;
  std::set<std::string> lookup_;
  AtomMode mode_ = AtomMode::Letters;
};

/* Tautology / contradiction over a concrete alphabet (a | !a resp. a & !a). */
FormulaPtr top(const Alphabet& sigma);
FormulaPtr bottom(const Alphabet& sigma);

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
std::size_t formula_size(const FormulaPtr& f);
std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> atom_symbols(const FormulaPtr& f);
/* Every variable name occurring anywhere, bound or free. */
std::set<std::string> all_vars(const FormulaPtr& f);
bool is_quantifier_free(const FormulaPtr& f);
bool is_closed(const FormulaPtr& f);

/* Capture-avoiding substitution of a time term for a free variable. */
FormulaPtr subst(const FormulaPtr& f, const std::string& var, const TermPtr& repl);

/* A name not in `avoid`, derived from `base`. */
std::string fresh_var(const std::string& base, const std::set<std::string>& avoid);

}  // namespace tel
