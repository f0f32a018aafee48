#include "tel/eval.hpp"

#include <algorithm>

namespace tel {

Truth3 t3_not(Truth3 a) {
  switch (a) {
    case Truth3::True: return Truth3::False;
    case Truth3::False: return Truth3::True;
    default: return Truth3::Unknown;
  }
}

Truth3 t3_and(Truth3 a, Truth3 b) {
  if (a == Truth3::False || b == Truth3::False) return Truth3::False;
  if (a == Truth3::True && b == Truth3::True) return Truth3::True;
  return Truth3::Unknown;
}

Truth3 t3_or(Truth3 a, Truth3 b) {
  if (a == Truth3::True || b == Truth3::True) return Truth3::True;
  if (a == Truth3::False && b == Truth3::False) return Truth3::False;
  return Truth3::Unknown;
}

const char* t3_name(Truth3 a) {
  switch (a) {
    case Truth3::True: return "true";
    case Truth3::False: return "false";
    default: return "unknown";
  }
}

long long default_bound(const LassoWord& w) {
  return w.prefix_size() + 2 * w.loop_size() + 8;
}

EvalConfig default_config(const LassoWord& w) {
  EvalConfig cfg;
  cfg.quant_bound = default_bound(w);
  return cfg;
}

Evaluator::Evaluator(const LassoWord& w, EvalConfig cfg) : w_(w), cfg_(cfg) {
  if (cfg_.quant_bound < 1) {
    throw Error(ErrorKind::InvalidArgument, "quantifier bound must be >= 1");
  }
  if (cfg_.step_limit < 1) {
    throw Error(ErrorKind::InvalidArgument, "step limit must be >= 1");
  }
}

const Evaluator::NodeInfo& Evaluator::info(const FormulaNode* f) {
  auto it = infos_.find(f);
  if (it != infos_.end()) return it->second;
  NodeInfo ni;
  /* free_vars wants a FormulaPtr; wrap without owning. */
  FormulaPtr alias(f, [](const FormulaNode*) {});
  auto fv = free_vars(alias);
  ni.free.assign(fv.begin(), fv.end());
  return infos_.emplace(f, std::move(ni)).first->second;
}

Truth3 Evaluator::eval(long long pos, const FormulaPtr& f, const Env& env) {
  if (pos < 1) throw Error(ErrorKind::BadIndex, "positions start at 1");
  Env scratch = env;
  return run(pos, f.get(), scratch);
}

Truth3 Evaluator::run(long long pos, const FormulaNode* f, Env& env) {
  if (++steps_ > cfg_.step_limit) {
    throw Error(ErrorKind::StepLimitExceeded,
                "evaluation exceeded " + std::to_string(cfg_.step_limit) + " steps");
  }

  MemoKey key{};
  bool memoize = cfg_.memo_enabled && f->kind != FKind::Atom;
  if (memoize) {
    const NodeInfo& ni = info(f);
    key.node = f;
    key.pos = w_.canonical_position(pos);
    key.vals.reserve(ni.free.size());
    for (const auto& v : ni.free) {
      auto it = env.find(v);
      if (it == env.end()) throw Error(ErrorKind::UnboundVariable, "unbound variable '" + v + "'");
      key.vals.push_back(it->second);
    }
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
  }

  Truth3 result = Truth3::Unknown;
  switch (f->kind) {
    case FKind::Atom: {
      const Letter& l = w_.letter_at(pos);
      result = l.count(f->name) ? Truth3::True : Truth3::False;
      break;
    }
    case FKind::Shift: {
      long long d = term_eval(f->term, env);
      result = run(pos + d, f->lhs.get(), env);
      break;
    }
    case FKind::Not:
      result = t3_not(run(pos, f->lhs.get(), env));
      break;
    case FKind::And: {
      Truth3 a = run(pos, f->lhs.get(), env);
      if (a == Truth3::False) {
        result = Truth3::False;
      } else {
        result = t3_and(a, run(pos, f->rhs.get(), env));
      }
      break;
    }
    case FKind::Or: {
      Truth3 a = run(pos, f->lhs.get(), env);
      if (a == Truth3::True) {
        result = Truth3::True;
      } else {
        result = t3_or(a, run(pos, f->rhs.get(), env));
      }
      break;
    }
    case FKind::Box: {
      long long t = term_eval(f->term, env);
      result = Truth3::True;
      for (long long j = pos; j < pos + t; ++j) {
        Truth3 v = run(j, f->lhs.get(), env);
        if (v == Truth3::False) {
          result = Truth3::False;
          break;
        }
        result = t3_and(result, v);
      }
      break;
    }
    case FKind::Diamond: {
      long long t = term_eval(f->term, env);
      result = Truth3::False;
      for (long long j = pos; j < pos + t; ++j) {
        Truth3 v = run(j, f->lhs.get(), env);
        if (v == Truth3::True) {
          result = Truth3::True;
          break;
        }
        result = t3_or(result, v);
      }
      break;
    }
    case FKind::Exists:
    case FKind::Forall: {
      bool is_exists = f->kind == FKind::Exists;
      auto saved = env.find(f->name) != env.end()
                       ? std::optional<long long>(env[f->name])
                       : std::nullopt;
      bool any_unknown = false;
      bool decided = false;
      for (long long k = 1; k <= cfg_.quant_bound; ++k) {
        env[f->name] = k;
        Truth3 v = run(pos, f->lhs.get(), env);
        if (is_exists && v == Truth3::True) {
          result = Truth3::True;
          decided = true;
          break;
        }
        if (!is_exists && v == Truth3::False) {
          result = Truth3::False;
          decided = true;
          break;
        }
        if (v == Truth3::Unknown) any_unknown = true;
      }
      if (saved) {
        env[f->name] = *saved;
      } else {
        env.erase(f->name);
      }
      if (!decided) {
        if (any_unknown) {
          result = Truth3::Unknown;
        } else if (cfg_.assume_complete) {
          result = is_exists ? Truth3::False : Truth3::True;
        } else {
          result = Truth3::Unknown;
        }
      }
      break;
    }
  }

  if (memoize) memo_.emplace(std::move(key), result);
  return result;
}

Truth3 eval(const LassoWord& w, long long i, const FormulaPtr& f, const Env& env,
            const EvalConfig& cfg) {
  Evaluator ev(w, cfg);
  return ev.eval(i, f, env);
}

bool eval_exact_qf(const LassoWord& w, long long i, const FormulaPtr& f,
                   const Env& env) {
  if (!is_quantifier_free(f)) {
    throw Error(ErrorKind::NotQuantifierFree, "formula contains quantifiers");
  }
  EvalConfig cfg;
  cfg.quant_bound = 1;
  Truth3 v = eval(w, i, f, env, cfg);
  /* Quantifier-free evaluation is total. */
  return v == Truth3::True;
}

Truth3 language_member(const LassoWord& w, const FormulaPtr& f, const EvalConfig& cfg) {
  auto fv = free_vars(f);
  if (!fv.empty()) {
    std::string names;
    for (const auto& v : fv) names += (names.empty() ? "" : ", ") + v;
    throw Error(ErrorKind::OpenFormula, "formula has free variables: " + names);
  }
  return eval(w, 1, f, {}, cfg);
}

bool holds_infinitely_often(const LassoWord& w, const std::set<std::string>& atoms) {
  if (w.alphabet().mode() != AtomMode::Letters) {
    throw Error(ErrorKind::ModeMismatch, "letters mode required");
  }
  for (const auto& l : w.loop()) {
    if (atoms.count(*l.begin())) return true;
  }
  return false;
}

std::optional<long long> exists_witness(const LassoWord& w, long long i,
                                        const FormulaPtr& f, const EvalConfig& cfg) {
  if (f->kind != FKind::Exists) {
    throw Error(ErrorKind::NotExistsRooted, "formula is not exists-rooted");
  }
  Evaluator ev(w, cfg);
  for (long long k = 1; k <= cfg.quant_bound; ++k) {
    Env env{{f->name, k}};
    if (ev.eval(i, f->lhs, env) == Truth3::True) return k;
  }
  return std::nullopt;
}

std::optional<long long> forall_counterexample(const LassoWord& w, long long i,
                                               const FormulaPtr& f,
                                               const EvalConfig& cfg) {
  if (f->kind != FKind::Forall) {
    throw Error(ErrorKind::NotForallRooted, "formula is not forall-rooted");
  }
  Evaluator ev(w, cfg);
  for (long long k = 1; k <= cfg.quant_bound; ++k) {
    Env env{{f->name, k}};
    if (ev.eval(i, f->lhs, env) == Truth3::False) return k;
  }
  return std::nullopt;
}

}  // namespace tel
