#include "tel/rewrite.hpp"

#include <algorithm>

namespace tel {

namespace {

void record(RewriteTrace* trace, const char* rule, std::vector<int> path,
            FormulaPtr before, FormulaPtr after) {
  if (!trace) return;
  trace->push_back(RewriteStep{rule, std::move(path), std::move(before), std::move(after)});
}

FormulaPtr nnf_pos(const FormulaPtr& f, const Alphabet& sigma);

FormulaPtr nnf_neg(const FormulaPtr& f, const Alphabet& sigma) {
  switch (f->kind) {
    case FKind::Atom: {
      if (sigma.mode() == AtomMode::Letters) {
        std::vector<FormulaPtr> others;
        for (const auto& s : sigma.symbols()) {
          if (s != f->name) others.push_back(atom(s));
        }
        if (!others.empty()) return or_all(others);
      }
      return not_(f);
    }
    case FKind::Shift:
      return shift(nnf_neg(f->lhs, sigma), f->term);
    case FKind::Not:
      return nnf_pos(f->lhs, sigma);
    case FKind::And:
      return or_(nnf_neg(f->lhs, sigma), nnf_neg(f->rhs, sigma));
    case FKind::Or:
      return and_(nnf_neg(f->lhs, sigma), nnf_neg(f->rhs, sigma));
    case FKind::Box:
      return diamond(f->term, nnf_neg(f->lhs, sigma));
    case FKind::Diamond:
      return box(f->term, nnf_neg(f->lhs, sigma));
    case FKind::Exists:
      return forall(f->name, nnf_neg(f->lhs, sigma));
    case FKind::Forall:
      return exists(f->name, nnf_neg(f->lhs, sigma));
  }
  return f;
}

FormulaPtr nnf_pos(const FormulaPtr& f, const Alphabet& sigma) {
  switch (f->kind) {
    case FKind::Atom:
      return f;
    case FKind::Not:
      return nnf_neg(f->lhs, sigma);
    case FKind::Shift:
      return shift(nnf_pos(f->lhs, sigma), f->term);
    case FKind::And:
      return and_(nnf_pos(f->lhs, sigma), nnf_pos(f->rhs, sigma));
    case FKind::Or:
      return or_(nnf_pos(f->lhs, sigma), nnf_pos(f->rhs, sigma));
    case FKind::Box:
      return box(f->term, nnf_pos(f->lhs, sigma));
    case FKind::Diamond:
      return diamond(f->term, nnf_pos(f->lhs, sigma));
    case FKind::Exists:
      return exists(f->name, nnf_pos(f->lhs, sigma));
    case FKind::Forall:
      return forall(f->name, nnf_pos(f->lhs, sigma));
  }
  return f;
}

/* Applies an accumulated shift `t` (already folded; null = no shift) while
 * normalizing `f`. Shifts land directly on atoms. */
FormulaPtr push_shift(const FormulaPtr& f, TermPtr t) {
  switch (f->kind) {
    case FKind::Atom:
      return t ? shift(f, t) : f;
    case FKind::Shift: {
      TermPtr sum = t ? term_fold(term_sum(f->term, t)) : term_fold(f->term);
      return push_shift(f->lhs, sum);
    }
    case FKind::Not:
      return not_(push_shift(f->lhs, t));
    case FKind::And:
      return and_(push_shift(f->lhs, t), push_shift(f->rhs, t));
    case FKind::Or:
      return or_(push_shift(f->lhs, t), push_shift(f->rhs, t));
    case FKind::Box:
      return box(term_fold(f->term), push_shift(f->lhs, t));
    case FKind::Diamond:
      return diamond(term_fold(f->term), push_shift(f->lhs, t));
    case FKind::Exists:
    case FKind::Forall: {
      std::string binder = f->name;
      FormulaPtr body = f->lhs;
      if (t && term_vars(t).count(binder)) {
        /* The shift mentions the binder; rename before pushing through. */
        std::set<std::string> avoid = all_vars(body);
        collect_term_vars(t, avoid);
        std::string nb = fresh_var("_v0", avoid);
        body = subst(body, binder, term_var(nb));
        binder = nb;
      }
      FormulaPtr nbody = push_shift(body, t);
      return f->kind == FKind::Exists ? exists(binder, nbody) : forall(binder, nbody);
    }
  }
  return f;
}

long long const_value(const TermPtr& t) {
  TermPtr folded = term_fold(t);
  return folded->kind == TermKind::Const ? folded->value : -1;
}

FormulaPtr expand(const FormulaPtr& f, long long guard, RewriteTrace* trace,
                  std::vector<int>& path) {
  FormulaPtr lhs = f->lhs, rhs = f->rhs;
  if (f->lhs) {
    path.push_back(0);
    lhs = expand(f->lhs, guard, trace, path);
    path.pop_back();
  }
  if (f->rhs) {
    path.push_back(1);
    rhs = expand(f->rhs, guard, trace, path);
    path.pop_back();
  }
  FormulaPtr g = f;
  if (lhs != f->lhs || rhs != f->rhs) {
    auto n = std::make_shared<FormulaNode>(*f);
    n->lhs = lhs;
    n->rhs = rhs;
    g = n;
  }
  if (g->kind != FKind::Box && g->kind != FKind::Diamond) return g;
  long long k = const_value(g->term);
  if (k < 1) return g;
  long long cost = k * (static_cast<long long>(formula_size(g->lhs)) + 1);
  if (cost > guard) return g;
  std::vector<FormulaPtr> parts;
  parts.reserve(static_cast<std::size_t>(k));
  for (long long i = 0; i < k; ++i) parts.push_back(shift(g->lhs, i));
  FormulaPtr out = g->kind == FKind::Box ? and_all(parts) : or_all(parts);
  record(trace, g->kind == FKind::Box ? "Box" : "Diamond", path, g, out);
  return out;
}

bool is_top_pattern(const FormulaPtr& f) {
  return f->kind == FKind::Or &&
         ((f->rhs->kind == FKind::Not && formula_equal(f->lhs, f->rhs->lhs)) ||
          (f->lhs->kind == FKind::Not && formula_equal(f->lhs->lhs, f->rhs)));
}

bool is_bottom_pattern(const FormulaPtr& f) {
  return f->kind == FKind::And &&
         ((f->rhs->kind == FKind::Not && formula_equal(f->lhs, f->rhs->lhs)) ||
          (f->lhs->kind == FKind::Not && formula_equal(f->lhs->lhs, f->rhs)));
}

/* One local rule application at the root of f; null when nothing fires. */
FormulaPtr local_rule(const FormulaPtr& f, const char** rule) {
  switch (f->kind) {
    case FKind::Shift: {
      if (f->lhs->kind == FKind::Shift) {
        *rule = "Future";
        return shift(f->lhs->lhs, term_fold(term_sum(f->lhs->term, f->term)));
      }
      TermPtr folded = term_fold(f->term);
      if (!term_equal(folded, f->term)) {
        *rule = "Future";
        return shift(f->lhs, folded);
      }
      return nullptr;
    }
    case FKind::Box:
    case FKind::Diamond: {
      bool is_box = f->kind == FKind::Box;
      long long k = const_value(f->term);
      if (k == 1) {
        *rule = is_box ? "Box" : "Diamond";
        return f->lhs;
      }
      if (k >= 1 && f->lhs->kind == f->kind) {
        long long k2 = const_value(f->lhs->term);
        if (k2 >= 1) {
          /* window composition: length k then k2 collapses to k + k2 - 1 */
          *rule = is_box ? "Box" : "Diamond";
          FormulaPtr body = f->lhs->lhs;
          return is_box ? box(k + k2 - 1, body) : diamond(k + k2 - 1, body);
        }
      }
      TermPtr folded = term_fold(f->term);
      if (!term_equal(folded, f->term)) {
        *rule = is_box ? "Box" : "Diamond";
        return is_box ? box(folded, f->lhs) : diamond(folded, f->lhs);
      }
      return nullptr;
    }
    case FKind::Not:
      if (f->lhs->kind == FKind::Not) {
        *rule = "Boolean";
        return f->lhs->lhs;
      }
      return nullptr;
    case FKind::And: {
      *rule = "Boolean";
      if (formula_equal(f->lhs, f->rhs)) return f->lhs;
      if (is_top_pattern(f->lhs)) return f->rhs;
      if (is_top_pattern(f->rhs)) return f->lhs;
      if (is_bottom_pattern(f->lhs)) return f->lhs;
      if (is_bottom_pattern(f->rhs)) return f->rhs;
      return nullptr;
    }
    case FKind::Or: {
      *rule = "Boolean";
      if (formula_equal(f->lhs, f->rhs)) return f->lhs;
      if (is_bottom_pattern(f->lhs)) return f->rhs;
      if (is_bottom_pattern(f->rhs)) return f->lhs;
      if (is_top_pattern(f->lhs)) return f->lhs;
      if (is_top_pattern(f->rhs)) return f->rhs;
      return nullptr;
    }
    default:
      return nullptr;
  }
}

FormulaPtr sweep(const FormulaPtr& f, RewriteTrace* trace, std::vector<int>& path,
                 bool& changed) {
  FormulaPtr lhs = f->lhs, rhs = f->rhs;
  if (f->lhs) {
    path.push_back(0);
    lhs = sweep(f->lhs, trace, path, changed);
    path.pop_back();
  }
  if (f->rhs) {
    path.push_back(1);
    rhs = sweep(f->rhs, trace, path, changed);
    path.pop_back();
  }
  FormulaPtr g = f;
  if (lhs != f->lhs || rhs != f->rhs) {
    auto n = std::make_shared<FormulaNode>(*f);
    n->lhs = lhs;
    n->rhs = rhs;
    g = n;
  }
  const char* rule = nullptr;
  while (FormulaPtr next = local_rule(g, &rule)) {
    record(trace, rule, path, g, next);
    g = next;
    changed = true;
  }
  return g;
}

}  // namespace

FormulaPtr negation_free(const FormulaPtr& f, const Alphabet& sigma,
                         RewriteTrace* trace) {
  FormulaPtr out = nnf_pos(f, sigma);
  if (!formula_equal(out, f)) record(trace, "Negation", {}, f, out);
  return out;
}

FormulaPtr normalize_shifts(const FormulaPtr& f, RewriteTrace* trace) {
  FormulaPtr out = push_shift(f, nullptr);
  if (!formula_equal(out, f)) record(trace, "Future", {}, f, out);
  return out;
}

FormulaPtr expand_constant_modalities(const FormulaPtr& f, long long size_guard,
                                      RewriteTrace* trace) {
  std::vector<int> path;
  return expand(f, size_guard, trace, path);
}

FormulaPtr unfold_exists(const FormulaPtr& f) {
  if (f->kind != FKind::Exists) {
    throw Error(ErrorKind::NotExistsRooted, "formula is not exists-rooted");
  }
  std::set<std::string> avoid = all_vars(f->lhs);
  avoid.insert(f->name);
  std::string y = fresh_var("_v0", avoid);
  FormulaPtr base = subst(f->lhs, f->name, term_const(1));
  FormulaPtr step = exists(y, subst(f->lhs, f->name,
                                    term_sum(term_var(y), term_const(1))));
  return or_(base, step);
}

FormulaPtr unfold_forall(const FormulaPtr& f) {
  if (f->kind != FKind::Forall) {
    throw Error(ErrorKind::NotForallRooted, "formula is not forall-rooted");
  }
  std::set<std::string> avoid = all_vars(f->lhs);
  avoid.insert(f->name);
  std::string y = fresh_var("_v0", avoid);
  FormulaPtr base = subst(f->lhs, f->name, term_const(1));
  FormulaPtr step = forall(y, subst(f->lhs, f->name,
                                    term_sum(term_var(y), term_const(1))));
  return and_(base, step);
}

FormulaPtr simplify(const FormulaPtr& f, RewriteTrace* trace, int max_sweeps) {
  FormulaPtr cur = f;
  for (int i = 0; i < max_sweeps; ++i) {
    bool changed = false;
    std::vector<int> path;
    cur = sweep(cur, trace, path, changed);
    if (!changed) break;
  }
  return cur;
}

}  // namespace tel
