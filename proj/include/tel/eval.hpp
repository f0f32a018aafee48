#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tel/core.hpp"
#include "tel/words.hpp"

namespace tel {

enum class Truth3 : std::uint8_t { False = 0, Unknown = 1, True = 2 };

Truth3 t3_not(Truth3 a);
Truth3 t3_and(Truth3 a, Truth3 b);
Truth3 t3_or(Truth3 a, Truth3 b);
const char* t3_name(Truth3 a);

struct EvalConfig {
  long long quant_bound = 32;       // B, quantifier instantiation range 1..B
  bool assume_complete = false;     // collapse exhausted quantifiers to definite
  bool memo_enabled = true;
  long long step_limit = 10'000'000;
};

/* The default bound for a word: one stabilized loop pass plus slack. */
long long default_bound(const LassoWord& w);
EvalConfig default_config(const LassoWord& w);

/* Bounded three-valued evaluation. A single Evaluator owns a memo table and
 * may be queried at several positions of the same word; it is not shared
 * between threads. */
class Evaluator {
 public:
  Evaluator(const LassoWord& w, EvalConfig cfg);

  Truth3 eval(long long pos, const FormulaPtr& f, const Env& env = {});
  long long steps_used() const { return steps_; }

 private:
  struct NodeInfo {
    std::vector<std::string> free;  // sorted free variables of the node
    bool memoizable = true;
  };
  struct MemoKey {
    const FormulaNode* node;
    long long pos;
    std::vector<long long> vals;  // env values aligned with NodeInfo::free
    bool operator==(const MemoKey& o) const {
      return node == o.node && pos == o.pos && vals == o.vals;
    }
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
      std::size_t h = std::hash<const void*>()(k.node) * 1000003u ^
                      static_cast<std::size_t>(k.pos) * 2654435761u;
      for (long long v : k.vals) h = h * 1099511628211ull ^ static_cast<std::size_t>(v);
      return h;
    }
  };

  Truth3 run(long long pos, const FormulaNode* f, Env& env);
  const NodeInfo& info(const FormulaNode* f);

  const LassoWord& w_;
  EvalConfig cfg_;
  long long steps_ = 0;
  std::unordered_map<const FormulaNode*, NodeInfo> infos_;
  std::unordered_map<MemoKey, Truth3, MemoHash> memo_;
};

Truth3 eval(const LassoWord& w, long long i, const FormulaPtr& f, const Env& env,
            const EvalConfig& cfg);

/* Exact two-valued evaluation of quantifier-free formulas. */
bool eval_exact_qf(const LassoWord& w, long long i, const FormulaPtr& f,
                   const Env& env = {});

/* Membership of w in L(f) for closed f, i.e. eval at position 1. */
Truth3 language_member(const LassoWord& w, const FormulaPtr& f, const EvalConfig& cfg);

/* True iff some loop position carries a letter in `atoms` (Letters mode). */
bool holds_infinitely_often(const LassoWord& w, const std::set<std::string>& atoms);

/* First k in 1..B making the body of an Exists-rooted formula True. */
std::optional<long long> exists_witness(const LassoWord& w, long long i,
                                        const FormulaPtr& f, const EvalConfig& cfg);
/* First k in 1..B making the body of a Forall-rooted formula False. */
std::optional<long long> forall_counterexample(const LassoWord& w, long long i,
                                               const FormulaPtr& f,
                                               const EvalConfig& cfg);

}  // namespace tel
