#include "tel/core.hpp"

#include <algorithm>

namespace tel {

TermPtr term_const(long long v) {
  if (v < 1) {
    throw Error(ErrorKind::ZeroConstant,
                "time constants must be >= 1, got " + std::to_string(v));
  }
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Const;
  n->value = v;
  return n;
}

TermPtr term_var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  return n;
}

TermPtr term_sum(TermPtr a, TermPtr b) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Sum;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

TermPtr term_scaled(long long n, TermPtr t) {
  if (n < 1) throw Error(ErrorKind::ZeroConstant, "scale factor must be >= 1");
  TermPtr acc = t;
  for (long long i = 1; i < n; ++i) acc = term_sum(acc, t);
  return acc;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Const: return a->value == b->value;
    case TermKind::Var: return a->name == b->name;
    case TermKind::Sum:
      return term_equal(a->lhs, b->lhs) && term_equal(a->rhs, b->rhs);
  }
  return false;
}

void collect_term_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Const: return;
    case TermKind::Var: out.insert(t->name); return;
    case TermKind::Sum:
      collect_term_vars(t->lhs, out);
      collect_term_vars(t->rhs, out);
      return;
  }
}

std::set<std::string> term_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

long long term_eval(const TermPtr& t, const Env& env) {
  switch (t->kind) {
    case TermKind::Const: return t->value;
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) {
        throw Error(ErrorKind::UnboundVariable, "unbound variable '" + t->name + "'");
      }
      return it->second;
    }
    case TermKind::Sum: return term_eval(t->lhs, env) + term_eval(t->rhs, env);
  }
  return 0;
}

TermPtr term_subst(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  switch (t->kind) {
    case TermKind::Const: return t;
    case TermKind::Var: return t->name == var ? repl : t;
    case TermKind::Sum: {
      TermPtr l = term_subst(t->lhs, var, repl);
      TermPtr r = term_subst(t->rhs, var, repl);
      if (l == t->lhs && r == t->rhs) return t;
      return term_sum(l, r);
    }
  }
  return t;
}

namespace {

/* Splits a term into (constant part, list of variable occurrences). */
void split_term(const TermPtr& t, long long& c, std::vector<std::string>& vars) {
  switch (t->kind) {
    case TermKind::Const: c += t->value; return;
    case TermKind::Var: vars.push_back(t->name); return;
    case TermKind::Sum:
      split_term(t->lhs, c, vars);
      split_term(t->rhs, c, vars);
      return;
  }
}

}  // namespace

TermPtr term_fold(const TermPtr& t) {
  long long c = 0;
  std::vector<std::string> vars;
  split_term(t, c, vars);
  std::sort(vars.begin(), vars.end());
  TermPtr acc;
  for (const auto& v : vars) {
    TermPtr vt = term_var(v);
    acc = acc ? term_sum(acc, vt) : vt;
  }
  if (c > 0) acc = acc ? term_sum(acc, term_const(c)) : term_const(c);
  return acc;  // non-null: a term always has a constant or a variable
}

std::string print_term(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const: return std::to_string(t->value);
    case TermKind::Var: return t->name;
    case TermKind::Sum: return print_term(t->lhs) + " + " + print_term(t->rhs);
  }
  return "";
}

FormulaPtr atom(std::string symbol) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Atom;
  n->name = std::move(symbol);
  return n;
}

FormulaPtr shift(FormulaPtr f, TermPtr t) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Shift;
  n->term = std::move(t);
  n->lhs = std::move(f);
  return n;
}

FormulaPtr shift(FormulaPtr f, long long k) {
  if (k == 0) return f;
  return shift(std::move(f), term_const(k));
}

FormulaPtr not_(FormulaPtr f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Not;
  n->lhs = std::move(f);
  return n;
}

FormulaPtr and_(FormulaPtr a, FormulaPtr b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::And;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

FormulaPtr or_(FormulaPtr a, FormulaPtr b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Or;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

FormulaPtr and_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) throw Error(ErrorKind::EmptyBlock, "empty conjunction");
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = and_(acc, fs[i]);
  return acc;
}

FormulaPtr or_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) throw Error(ErrorKind::EmptyBlock, "empty disjunction");
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = or_(acc, fs[i]);
  return acc;
}

FormulaPtr box(TermPtr t, FormulaPtr f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Box;
  n->term = std::move(t);
  n->lhs = std::move(f);
  return n;
}

FormulaPtr box(long long k, FormulaPtr f) { return box(term_const(k), std::move(f)); }

FormulaPtr diamond(TermPtr t, FormulaPtr f) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Diamond;
  n->term = std::move(t);
  n->lhs = std::move(f);
  return n;
}

FormulaPtr diamond(long long k, FormulaPtr f) {
  return diamond(term_const(k), std::move(f));
}

FormulaPtr exists(std::string var, FormulaPtr body) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Exists;
  n->name = std::move(var);
  n->lhs = std::move(body);
  return n;
}

FormulaPtr forall(std::string var, FormulaPtr body) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Forall;
  n->name = std::move(var);
  n->lhs = std::move(body);
  return n;
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return or_(not_(std::move(a)), std::move(b));
}

FormulaPtr box_inf(FormulaPtr f) {
  std::string x = fresh_var("x", all_vars(f));
  return and_(f, forall(x, shift(f, term_var(x))));
}

FormulaPtr diamond_inf(FormulaPtr f) {
  std::string x = fresh_var("x", all_vars(f));
  return or_(f, exists(x, shift(f, term_var(x))));
}

Alphabet::Alphabet(std::vector<std::string> symbols, AtomMode mode)
    : symbols_(std::move(symbols)), mode_(mode) {
  if (symbols_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "alphabet must be non-empty");
  }
  for (const auto& s : symbols_) {
    if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty alphabet symbol");
    if (!lookup_.insert(s).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate alphabet symbol '" + s + "'");
    }
  }
}

FormulaPtr top(const Alphabet& sigma) {
  FormulaPtr a = atom(sigma.symbols().front());
  return or_(a, not_(a));
}

FormulaPtr bottom(const Alphabet& sigma) {
  FormulaPtr a = atom(sigma.symbols().front());
  return and_(a, not_(a));
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->name != b->name) return false;
  if ((a->term == nullptr) != (b->term == nullptr)) return false;
  if (a->term && !term_equal(a->term, b->term)) return false;
  if ((a->lhs == nullptr) != (b->lhs == nullptr)) return false;
  if (a->lhs && !formula_equal(a->lhs, b->lhs)) return false;
  if ((a->rhs == nullptr) != (b->rhs == nullptr)) return false;
  if (a->rhs && !formula_equal(a->rhs, b->rhs)) return false;
  return true;
}

std::size_t formula_size(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + formula_size(f->lhs) + formula_size(f->rhs);
}

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      return;
    case FKind::Shift:
    case FKind::Box:
    case FKind::Diamond: {
      for (const auto& v : term_vars(f->term)) {
        if (!bound.count(v)) out.insert(v);
      }
      collect_free(f->lhs, bound, out);
      return;
    }
    case FKind::Not:
      collect_free(f->lhs, bound, out);
      return;
    case FKind::And:
    case FKind::Or:
      collect_free(f->lhs, bound, out);
      collect_free(f->rhs, bound, out);
      return;
    case FKind::Exists:
    case FKind::Forall: {
      bool added = bound.insert(f->name).second;
      collect_free(f->lhs, bound, out);
      if (added) bound.erase(f->name);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> atom_symbols(const FormulaPtr& f) {
  std::set<std::string> out;
  std::vector<const FormulaNode*> stack{f.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (!n) continue;
    if (n->kind == FKind::Atom) out.insert(n->name);
    stack.push_back(n->lhs.get());
    stack.push_back(n->rhs.get());
  }
  return out;
}

std::set<std::string> all_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  std::vector<const FormulaNode*> stack{f.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (!n) continue;
    if (n->kind == FKind::Exists || n->kind == FKind::Forall) out.insert(n->name);
    if (n->term) collect_term_vars(n->term, out);
    stack.push_back(n->lhs.get());
    stack.push_back(n->rhs.get());
  }
  return out;
}

bool is_quantifier_free(const FormulaPtr& f) {
  if (!f) return true;
  if (f->kind == FKind::Exists || f->kind == FKind::Forall) return false;
  return is_quantifier_free(f->lhs) && is_quantifier_free(f->rhs);
}

bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (long long i = 0;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

FormulaPtr subst(const FormulaPtr& f, const std::string& var, const TermPtr& repl) {
  switch (f->kind) {
    case FKind::Atom:
      return f;
    case FKind::Shift: {
      TermPtr t = term_subst(f->term, var, repl);
      FormulaPtr body = subst(f->lhs, var, repl);
      if (t == f->term && body == f->lhs) return f;
      return shift(body, t);
    }
    case FKind::Box:
    case FKind::Diamond: {
      TermPtr t = term_subst(f->term, var, repl);
      FormulaPtr body = subst(f->lhs, var, repl);
      if (t == f->term && body == f->lhs) return f;
      return f->kind == FKind::Box ? box(t, body) : diamond(t, body);
    }
    case FKind::Not: {
      FormulaPtr body = subst(f->lhs, var, repl);
      return body == f->lhs ? f : not_(body);
    }
    case FKind::And:
    case FKind::Or: {
      FormulaPtr l = subst(f->lhs, var, repl);
      FormulaPtr r = subst(f->rhs, var, repl);
      if (l == f->lhs && r == f->rhs) return f;
      return f->kind == FKind::And ? and_(l, r) : or_(l, r);
    }
    case FKind::Exists:
    case FKind::Forall: {
      if (f->name == var) return f;  // var is shadowed here
      FormulaPtr body = f->lhs;
      std::string binder = f->name;
      if (term_vars(repl).count(binder) && free_vars(body).count(var)) {
        /* Renaming needed or the substituted term would be captured. */
        std::set<std::string> avoid = all_vars(body);
        collect_term_vars(repl, avoid);
        avoid.insert(var);
        std::string nb = fresh_var(binder, avoid);
        body = subst(body, binder, term_var(nb));
        binder = nb;
      }
      FormulaPtr nbody = subst(body, var, repl);
      if (nbody == f->lhs && binder == f->name) return f;
      return f->kind == FKind::Exists ? exists(binder, nbody) : forall(binder, nbody);
    }
  }
  return f;
}

}  // namespace tel
