#include "tel/translate.hpp"

#include <cctype>
#include <map>

namespace tel {

/* --- LTL construction -------------------------------------------------- */

namespace {

LTLPtr ltl_node(LTLKind k, std::string name, LTLPtr lhs, LTLPtr rhs) {
  auto n = std::make_shared<LTLNode>();
  n->kind = k;
  n->name = std::move(name);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

}  // namespace

LTLPtr ltl_atom(std::string a) { return ltl_node(LTLKind::Atom, std::move(a), nullptr, nullptr); }
LTLPtr ltl_not(LTLPtr f) { return ltl_node(LTLKind::Not, "", std::move(f), nullptr); }
LTLPtr ltl_and(LTLPtr a, LTLPtr b) { return ltl_node(LTLKind::And, "", std::move(a), std::move(b)); }
LTLPtr ltl_or(LTLPtr a, LTLPtr b) { return ltl_node(LTLKind::Or, "", std::move(a), std::move(b)); }
LTLPtr ltl_next(LTLPtr f) { return ltl_node(LTLKind::Next, "", std::move(f), nullptr); }
LTLPtr ltl_finally(LTLPtr f) { return ltl_node(LTLKind::Finally, "", std::move(f), nullptr); }
LTLPtr ltl_globally(LTLPtr f) { return ltl_node(LTLKind::Globally, "", std::move(f), nullptr); }
LTLPtr ltl_until(LTLPtr a, LTLPtr b) { return ltl_node(LTLKind::Until, "", std::move(a), std::move(b)); }
LTLPtr ltl_weak_until(LTLPtr a, LTLPtr b) { return ltl_node(LTLKind::WeakUntil, "", std::move(a), std::move(b)); }
LTLPtr ltl_strong_release(LTLPtr a, LTLPtr b) { return ltl_node(LTLKind::StrongRelease, "", std::move(a), std::move(b)); }
LTLPtr ltl_release(LTLPtr a, LTLPtr b) { return ltl_node(LTLKind::Release, "", std::move(a), std::move(b)); }

/* --- exact LTL evaluation ---------------------------------------------- */

namespace {

/* Truth vectors over the l+p canonical positions. The successor of the last
 * position wraps to the loop head; least/greatest fixed points stabilize
 * within l+p sweeps. */
class LTLVectors {
 public:
  explicit LTLVectors(const LassoWord& w)
      : w_(w), n_(w.prefix_size() + w.loop_size()) {}

  const std::vector<char>& vec(const LTLNode* f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    std::vector<char> v = compute(f);
    return memo_.emplace(f, std::move(v)).first->second;
  }

 private:
  long long succ(long long i) const {
    return i < n_ ? i + 1 : w_.prefix_size() + 1;
  }

  std::vector<char> fixpoint(const std::vector<char>& a, const std::vector<char>& b,
                             bool init, bool release) {
    std::vector<char> v(static_cast<std::size_t>(n_) + 1, init ? 1 : 0);
    for (long long round = 0; round <= n_ + 1; ++round) {
      for (long long i = 1; i <= n_; ++i) {
        bool nxt = v[static_cast<std::size_t>(succ(i))];
        bool x = release ? (b[static_cast<std::size_t>(i)] &&
                            (a[static_cast<std::size_t>(i)] || nxt))
                         : (b[static_cast<std::size_t>(i)] ||
                            (a[static_cast<std::size_t>(i)] && nxt));
        v[static_cast<std::size_t>(i)] = x;
      }
    }
    return v;
  }

  std::vector<char> compute(const LTLNode* f) {
    std::vector<char> v(static_cast<std::size_t>(n_) + 1, 0);
    switch (f->kind) {
      case LTLKind::Atom:
        for (long long i = 1; i <= n_; ++i) {
          v[static_cast<std::size_t>(i)] = w_.letter_at(i).count(f->name) != 0;
        }
        return v;
      case LTLKind::Not: {
        const auto& a = vec(f->lhs.get());
        for (long long i = 1; i <= n_; ++i) {
          v[static_cast<std::size_t>(i)] = !a[static_cast<std::size_t>(i)];
        }
        return v;
      }
      case LTLKind::And:
      case LTLKind::Or: {
        const auto& a = vec(f->lhs.get());
        const auto& b = vec(f->rhs.get());
        for (long long i = 1; i <= n_; ++i) {
          auto u = static_cast<std::size_t>(i);
          v[u] = f->kind == LTLKind::And ? (a[u] && b[u]) : (a[u] || b[u]);
        }
        return v;
      }
      case LTLKind::Next: {
        const auto& a = vec(f->lhs.get());
        for (long long i = 1; i <= n_; ++i) {
          v[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(succ(i))];
        }
        return v;
      }
      case LTLKind::Finally: {
        /* F a = true U a */
        std::vector<char> top(static_cast<std::size_t>(n_) + 1, 1);
        return fixpoint(top, vec(f->lhs.get()), false, false);
      }
      case LTLKind::Globally: {
        /* G a = false R a: b holds forever */
        std::vector<char> bot(static_cast<std::size_t>(n_) + 1, 0);
        return fixpoint(bot, vec(f->lhs.get()), true, true);
      }
      case LTLKind::Until:
        return fixpoint(vec(f->lhs.get()), vec(f->rhs.get()), false, false);
      case LTLKind::WeakUntil:
        return fixpoint(vec(f->lhs.get()), vec(f->rhs.get()), true, false);
      case LTLKind::StrongRelease:
        return fixpoint(vec(f->lhs.get()), vec(f->rhs.get()), false, true);
      case LTLKind::Release:
        return fixpoint(vec(f->lhs.get()), vec(f->rhs.get()), true, true);
    }
    return v;
  }

  const LassoWord& w_;
  long long n_;
  std::map<const LTLNode*, std::vector<char>> memo_;
};

}  // namespace

bool ltl_eval(const LassoWord& w, long long i, const LTLPtr& f) {
  if (i < 1) throw Error(ErrorKind::NonPositiveTime, "position must be >= 1");
  if (w.alphabet().mode() != AtomMode::Letters) {
    throw Error(ErrorKind::ModeMismatch, "LTL evaluation requires a letters-mode word");
  }
  LTLVectors vs(w);
  return vs.vec(f.get())[static_cast<std::size_t>(w.canonical_position(i))] != 0;
}

/* --- LTL -> TEL --------------------------------------------------------- */

namespace {

class LTLTranslator {
 public:
  FormulaPtr run(const LTLNode* f) {
    switch (f->kind) {
      case LTLKind::Atom:
        return atom(f->name);
      case LTLKind::Not:
        return not_(run(f->lhs.get()));
      case LTLKind::And:
        return and_(run(f->lhs.get()), run(f->rhs.get()));
      case LTLKind::Or:
        return or_(run(f->lhs.get()), run(f->rhs.get()));
      case LTLKind::Next:
        return shift(run(f->lhs.get()), 1);
      case LTLKind::Finally: {
        FormulaPtr a = run(f->lhs.get());
        std::string x = fresh();
        return or_(a, exists(x, shift(a, term_var(x))));
      }
      case LTLKind::Globally:
        return globally(run(f->lhs.get()));
      case LTLKind::Until:
        return until(run(f->lhs.get()), run(f->rhs.get()));
      case LTLKind::StrongRelease:
        return strong_release(run(f->lhs.get()), run(f->rhs.get()));
      case LTLKind::WeakUntil: {
        FormulaPtr a = run(f->lhs.get());
        FormulaPtr b = run(f->rhs.get());
        return or_(globally(a), until(a, b));
      }
      case LTLKind::Release: {
        FormulaPtr a = run(f->lhs.get());
        FormulaPtr b = run(f->rhs.get());
        return or_(globally(b), strong_release(a, b));
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unreachable LTL kind");
  }

 private:
  std::string fresh() { return "x" + std::to_string(++counter_); }

  FormulaPtr globally(FormulaPtr a) {
    std::string x = fresh();
    return and_(a, forall(x, shift(a, term_var(x))));
  }

  /* psi | exists x (psi@x & [x] phi): the k = 0 disjunct covers LTL's
   * zero-offset witness, TEL quantifiers start at 1. */
  FormulaPtr until(FormulaPtr a, FormulaPtr b) {
    std::string x = fresh();
    return or_(b, exists(x, and_(shift(b, term_var(x)), box(term_var(x), a))));
  }

  FormulaPtr strong_release(FormulaPtr a, FormulaPtr b) {
    FormulaPtr both = and_(a, b);
    std::string x = fresh();
    return or_(both, exists(x, and_(shift(both, term_var(x)), box(term_var(x), b))));
  }

  int counter_ = 0;
};

}  // namespace

FormulaPtr ltl_to_tel(const LTLPtr& f) {
  LTLTranslator t;
  return t.run(f.get());
}

/* --- mini-grammar tokenizer (shared by LTL and TCL) -------------------- */

namespace {

struct MiniTok {
  enum Kind { Ident, Bang, Amp, Pipe, Arrow, LParen, RParen, End } kind;
  std::string text;
  SourceSpan span;
};

class MiniLexer {
 public:
  explicit MiniLexer(const std::string& text) : text_(text) { advance(); }

  const MiniTok& peek() const { return tok_; }
  MiniTok take() {
    MiniTok t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.span.begin = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = MiniTok::End;
      tok_.span.end = pos_;
      return;
    }
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      tok_.kind = MiniTok::Ident;
      tok_.text = text_.substr(b, pos_ - b);
      tok_.span.end = pos_;
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_.kind = MiniTok::Arrow;
      pos_ += 2;
      tok_.span.end = pos_;
      return;
    }
    switch (c) {
      case '!': tok_.kind = MiniTok::Bang; break;
      case '&': tok_.kind = MiniTok::Amp; break;
      case '|': tok_.kind = MiniTok::Pipe; break;
      case '(': tok_.kind = MiniTok::LParen; break;
      case ')': tok_.kind = MiniTok::RParen; break;
      default:
        throw Error(ErrorKind::SyntaxError, SourceSpan{pos_, pos_ + 1},
                    std::string("unexpected character '") + c + "'");
    }
    ++pos_;
    tok_.span.end = pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  MiniTok tok_;
};

/* --- LTL parsing / printing -------------------------------------------- */

bool is_ltl_keyword(const std::string& s) {
  return s.size() == 1 && std::string("XFGUWMR").find(s[0]) != std::string::npos;
}

class LTLParser {
 public:
  LTLParser(const std::string& text, const Alphabet& alphabet)
      : lex_(text), alphabet_(alphabet) {}

  LTLPtr parse() {
    LTLPtr f = parse_implies();
    if (lex_.peek().kind != MiniTok::End) {
      throw Error(ErrorKind::SyntaxError, lex_.peek().span, "expected end of input");
    }
    return f;
  }

 private:
  LTLPtr parse_implies() {
    LTLPtr lhs = parse_or();
    if (lex_.peek().kind == MiniTok::Arrow) {
      lex_.take();
      return ltl_or(ltl_not(lhs), parse_implies());
    }
    return lhs;
  }

  LTLPtr parse_or() {
    LTLPtr f = parse_and();
    while (lex_.peek().kind == MiniTok::Pipe) {
      lex_.take();
      f = ltl_or(f, parse_and());
    }
    return f;
  }

  LTLPtr parse_and() {
    LTLPtr f = parse_temporal();
    while (lex_.peek().kind == MiniTok::Amp) {
      lex_.take();
      f = ltl_and(f, parse_temporal());
    }
    return f;
  }

  LTLPtr parse_temporal() {
    LTLPtr lhs = parse_unary();
    const MiniTok& t = lex_.peek();
    if (t.kind == MiniTok::Ident && t.text.size() == 1) {
      switch (t.text[0]) {
        case 'U': lex_.take(); return ltl_until(lhs, parse_temporal());
        case 'W': lex_.take(); return ltl_weak_until(lhs, parse_temporal());
        case 'M': lex_.take(); return ltl_strong_release(lhs, parse_temporal());
        case 'R': lex_.take(); return ltl_release(lhs, parse_temporal());
        default: break;
      }
    }
    return lhs;
  }

  LTLPtr parse_unary() {
    const MiniTok& t = lex_.peek();
    if (t.kind == MiniTok::Bang) {
      lex_.take();
      return ltl_not(parse_unary());
    }
    if (t.kind == MiniTok::Ident && t.text.size() == 1) {
      switch (t.text[0]) {
        case 'X': lex_.take(); return ltl_next(parse_unary());
        case 'F': lex_.take(); return ltl_finally(parse_unary());
        case 'G': lex_.take(); return ltl_globally(parse_unary());
        default: break;
      }
    }
    return parse_primary();
  }

  LTLPtr parse_primary() {
    const MiniTok& t = lex_.peek();
    if (t.kind == MiniTok::LParen) {
      lex_.take();
      LTLPtr f = parse_implies();
      if (lex_.peek().kind != MiniTok::RParen) {
        throw Error(ErrorKind::SyntaxError, lex_.peek().span, "expected ')'");
      }
      lex_.take();
      return f;
    }
    if (t.kind == MiniTok::Ident && !is_ltl_keyword(t.text)) {
      MiniTok id = lex_.take();
      if (!alphabet_.contains(id.text)) {
        throw Error(ErrorKind::UnknownSymbol, id.span, "unknown atom '" + id.text + "'");
      }
      return ltl_atom(id.text);
    }
    throw Error(ErrorKind::SyntaxError, t.span, "expected an LTL formula");
  }

  MiniLexer lex_;
  const Alphabet& alphabet_;
};

/* Precedence for printing: | 1, & 2, U/W/M/R 3 (right-assoc), prefix 4,
 * atom 5. */
int ltl_level(const LTLNode* f) {
  switch (f->kind) {
    case LTLKind::Atom: return 5;
    case LTLKind::Not:
    case LTLKind::Next:
    case LTLKind::Finally:
    case LTLKind::Globally: return 4;
    case LTLKind::Until:
    case LTLKind::WeakUntil:
    case LTLKind::StrongRelease:
    case LTLKind::Release: return 3;
    case LTLKind::And: return 2;
    case LTLKind::Or: return 1;
  }
  return 0;
}

void ltl_render(const LTLNode* f, int min_level, std::string& out) {
  bool parens = ltl_level(f) < min_level;
  if (parens) out += "(";
  switch (f->kind) {
    case LTLKind::Atom:
      out += f->name;
      break;
    case LTLKind::Not:
      out += "!";
      ltl_render(f->lhs.get(), 4, out);
      break;
    case LTLKind::Next:
    case LTLKind::Finally:
    case LTLKind::Globally:
      out += f->kind == LTLKind::Next ? "X " : f->kind == LTLKind::Finally ? "F " : "G ";
      ltl_render(f->lhs.get(), 4, out);
      break;
    case LTLKind::Until:
    case LTLKind::WeakUntil:
    case LTLKind::StrongRelease:
    case LTLKind::Release: {
      const char* op = f->kind == LTLKind::Until ? " U "
                       : f->kind == LTLKind::WeakUntil ? " W "
                       : f->kind == LTLKind::StrongRelease ? " M " : " R ";
      ltl_render(f->lhs.get(), 4, out);
      out += op;
      ltl_render(f->rhs.get(), 3, out);
      break;
    }
    case LTLKind::And:
      ltl_render(f->lhs.get(), 2, out);
      out += " & ";
      ltl_render(f->rhs.get(), 3, out);
      break;
    case LTLKind::Or:
      ltl_render(f->lhs.get(), 1, out);
      out += " | ";
      ltl_render(f->rhs.get(), 2, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

LTLPtr parse_ltl(const std::string& text, const Alphabet& alphabet) {
  LTLParser p(text, alphabet);
  return p.parse();
}

std::string print_ltl(const LTLPtr& f) {
  std::string out;
  ltl_render(f.get(), 0, out);
  return out;
}

/* --- TCL construction --------------------------------------------------- */

namespace {

TCLPtr tcl_node(TCLKind k, AllenKind a, std::string name, TCLPtr lhs, TCLPtr rhs) {
  auto n = std::make_shared<TCLNode>();
  n->kind = k;
  n->allen = a;
  n->name = std::move(name);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

}  // namespace

TCLPtr tcl_atom(std::string p) { return tcl_node(TCLKind::Atom, AllenKind::Meets, std::move(p), nullptr, nullptr); }
TCLPtr tcl_not(TCLPtr f) { return tcl_node(TCLKind::Not, AllenKind::Meets, "", std::move(f), nullptr); }
TCLPtr tcl_and(TCLPtr a, TCLPtr b) { return tcl_node(TCLKind::And, AllenKind::Meets, "", std::move(a), std::move(b)); }
TCLPtr tcl_or(TCLPtr a, TCLPtr b) { return tcl_node(TCLKind::Or, AllenKind::Meets, "", std::move(a), std::move(b)); }
TCLPtr tcl_allen(AllenKind k, TCLPtr a, TCLPtr b) { return tcl_node(TCLKind::Allen, k, "", std::move(a), std::move(b)); }

/* --- exact TCL evaluation ----------------------------------------------- */

namespace {

/* Required truth of (left, right) on one segment. */
struct SegReq {
  bool lhs;
  bool rhs;
};

/* Segment patterns before the co-finite all-false tail. */
std::vector<SegReq> allen_pattern(AllenKind k) {
  switch (k) {
    case AllenKind::Meets:      return {{true, false}, {false, true}};
    case AllenKind::Before:     return {{true, false}, {false, false}, {false, true}};
    case AllenKind::StartedBy:  return {{true, true}, {true, false}};
    case AllenKind::FinishedBy: return {{true, false}, {true, true}};
    case AllenKind::Contains:   return {{true, false}, {true, true}, {true, false}};
    case AllenKind::Overlaps:   return {{true, false}, {true, true}, {false, true}};
  }
  return {};
}

bool tcl_value(const LassoWord& w, long long t, const TCLNode* f);

/* Truth of f at every canonical position, 1-indexed. */
std::vector<char> tcl_vector(const LassoWord& w, const TCLNode* f) {
  long long n = w.prefix_size() + w.loop_size();
  std::vector<char> v(static_cast<std::size_t>(n) + 1, 0);
  for (long long i = 1; i <= n; ++i) {
    v[static_cast<std::size_t>(i)] = tcl_value(w, i, f);
  }
  return v;
}

bool allen_value(const LassoWord& w, long long s, const TCLNode* f) {
  s = w.canonical_position(s);
  long long ell = w.prefix_size(), p = w.loop_size();
  long long n = ell + p;
  std::vector<char> a = tcl_vector(w, f->lhs.get());
  std::vector<char> b = tcl_vector(w, f->rhs.get());
  auto match = [&](long long t, SegReq r) {
    auto c = static_cast<std::size_t>(w.canonical_position(t));
    return (a[c] != 0) == r.lhs && (b[c] != 0) == r.rhs;
  };
  std::vector<SegReq> segs = allen_pattern(f->allen);
  auto seg_ok = [&](long long from, long long to, SegReq r) {
    for (long long t = from; t < to; ++t) {
      if (!match(t, r)) return false;
    }
    return true;
  };
  /* The tail constrains every loop class, so every pre-tail boundary lies at
   * or before the loop head; [s+1, n+1] is a safe search range. */
  auto tail_ok = [&](long long from) {
    for (long long t = from; t <= ell; ++t) {
      if (!match(t, {false, false})) return false;
    }
    for (long long t = ell + 1; t <= n; ++t) {
      if (!match(t, {false, false})) return false;
    }
    return true;
  };
  std::vector<long long> bounds(segs.size());
  auto search = [&](auto&& self, std::size_t idx, long long start) -> bool {
    if (idx == segs.size()) return tail_ok(start);
    for (long long bnd = start + 1; bnd <= n + 1; ++bnd) {
      if (!match(bnd - 1, segs[idx])) break;  // segment must stay monochromatic
      if (!seg_ok(start, bnd, segs[idx])) continue;
      if (self(self, idx + 1, bnd)) return true;
    }
    return false;
  };
  return search(search, 0, s);
}

bool tcl_value(const LassoWord& w, long long t, const TCLNode* f) {
  switch (f->kind) {
    case TCLKind::Atom:
      return w.letter_at(t).count(f->name) != 0;
    case TCLKind::Not:
      return !tcl_value(w, t, f->lhs.get());
    case TCLKind::And:
      return tcl_value(w, t, f->lhs.get()) && tcl_value(w, t, f->rhs.get());
    case TCLKind::Or:
      return tcl_value(w, t, f->lhs.get()) || tcl_value(w, t, f->rhs.get());
    case TCLKind::Allen:
      return allen_value(w, t, f);
  }
  return false;
}

}  // namespace

bool tcl_eval(const LassoWord& w, long long s, const TCLPtr& f) {
  if (s < 1) throw Error(ErrorKind::NonPositiveTime, "position must be >= 1");
  if (w.alphabet().mode() != AtomMode::Props) {
    throw Error(ErrorKind::ModeMismatch, "TCL evaluation requires a props-mode word");
  }
  return tcl_value(w, s, f.get());
}

/* --- block templates ----------------------------------------------------- */

namespace {

FormulaPtr block_chain(const std::vector<FormulaPtr>& parts, bool open) {
  if (parts.empty()) throw Error(ErrorKind::EmptyBlock, "block needs at least one part");
  std::size_t n = parts.size();
  std::size_t quantified = open ? n - 1 : n;
  std::set<std::string> avoid;
  for (const auto& part : parts) {
    std::set<std::string> vs = all_vars(part);
    avoid.insert(vs.begin(), vs.end());
  }
  std::vector<std::string> xs;
  for (std::size_t i = 1; i <= quantified; ++i) {
    std::string x = fresh_var("x" + std::to_string(i), avoid);
    avoid.insert(x);
    xs.push_back(x);
  }
  std::vector<FormulaPtr> conjuncts;
  TermPtr offset;  // x_1 + ... + x_{i-1}, null at the first part
  for (std::size_t i = 0; i < n; ++i) {
    FormulaPtr window = (open && i == n - 1)
                            ? box_inf(parts[i])
                            : box(term_var(xs[i]), parts[i]);
    conjuncts.push_back(offset ? shift(window, offset) : window);
    if (i < quantified) {
      offset = offset ? term_sum(offset, term_var(xs[i])) : term_var(xs[i]);
    }
  }
  FormulaPtr body = and_all(conjuncts);
  for (std::size_t i = quantified; i-- > 0;) body = exists(xs[i], body);
  return body;
}

}  // namespace

FormulaPtr block_closed(const std::vector<FormulaPtr>& parts) {
  return block_chain(parts, false);
}

FormulaPtr block_open(const std::vector<FormulaPtr>& parts) {
  return block_chain(parts, true);
}

/* --- TCL -> TEL ----------------------------------------------------------- */

namespace {

FormulaPtr tcl_translate(const TCLNode* f) {
  switch (f->kind) {
    case TCLKind::Atom:
      return atom(f->name);
    case TCLKind::Not:
      return not_(tcl_translate(f->lhs.get()));
    case TCLKind::And:
      return and_(tcl_translate(f->lhs.get()), tcl_translate(f->rhs.get()));
    case TCLKind::Or:
      return or_(tcl_translate(f->lhs.get()), tcl_translate(f->rhs.get()));
    case TCLKind::Allen: {
      FormulaPtr a = tcl_translate(f->lhs.get());
      FormulaPtr b = tcl_translate(f->rhs.get());
      FormulaPtr tf = and_(a, not_(b));   // left only
      FormulaPtr ft = and_(b, not_(a));   // right only
      FormulaPtr tt = and_(a, b);
      FormulaPtr ff = and_(not_(a), not_(b));
      std::vector<FormulaPtr> parts;
      for (SegReq r : allen_pattern(f->allen)) {
        parts.push_back(r.lhs ? (r.rhs ? tt : tf) : (r.rhs ? ft : ff));
      }
      parts.push_back(ff);  // co-finite tail
      return block_open(parts);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unreachable TCL kind");
}

/* --- TCL parsing / printing ---------------------------------------------- */

bool is_allen_keyword(const std::string& s) {
  return s.size() == 1 && std::string("ALBEDO").find(s[0]) != std::string::npos;
}

AllenKind allen_kind_of(char c) {
  switch (c) {
    case 'A': return AllenKind::Meets;
    case 'L': return AllenKind::Before;
    case 'B': return AllenKind::StartedBy;
    case 'E': return AllenKind::FinishedBy;
    case 'D': return AllenKind::Contains;
    default:  return AllenKind::Overlaps;
  }
}

char allen_letter_of(AllenKind k) {
  switch (k) {
    case AllenKind::Meets: return 'A';
    case AllenKind::Before: return 'L';
    case AllenKind::StartedBy: return 'B';
    case AllenKind::FinishedBy: return 'E';
    case AllenKind::Contains: return 'D';
    case AllenKind::Overlaps: return 'O';
  }
  return '?';
}

class TCLParser {
 public:
  TCLParser(const std::string& text, const Alphabet& alphabet)
      : lex_(text), alphabet_(alphabet) {}

  TCLPtr parse() {
    TCLPtr f = parse_or();
    if (lex_.peek().kind != MiniTok::End) {
      throw Error(ErrorKind::SyntaxError, lex_.peek().span, "expected end of input");
    }
    return f;
  }

 private:
  TCLPtr parse_or() {
    TCLPtr f = parse_and();
    while (lex_.peek().kind == MiniTok::Pipe) {
      lex_.take();
      f = tcl_or(f, parse_and());
    }
    return f;
  }

  TCLPtr parse_and() {
    TCLPtr f = parse_allen();
    while (lex_.peek().kind == MiniTok::Amp) {
      lex_.take();
      f = tcl_and(f, parse_allen());
    }
    return f;
  }

  TCLPtr parse_allen() {
    TCLPtr lhs = parse_unary();
    const MiniTok& t = lex_.peek();
    if (t.kind == MiniTok::Ident && is_allen_keyword(t.text)) {
      MiniTok op = lex_.take();
      return tcl_allen(allen_kind_of(op.text[0]), lhs, parse_allen());
    }
    return lhs;
  }

  TCLPtr parse_unary() {
    if (lex_.peek().kind == MiniTok::Bang) {
      lex_.take();
      return tcl_not(parse_unary());
    }
    return parse_primary();
  }

  TCLPtr parse_primary() {
    const MiniTok& t = lex_.peek();
    if (t.kind == MiniTok::LParen) {
      lex_.take();
      TCLPtr f = parse_or();
      if (lex_.peek().kind != MiniTok::RParen) {
        throw Error(ErrorKind::SyntaxError, lex_.peek().span, "expected ')'");
      }
      lex_.take();
      return f;
    }
    if (t.kind == MiniTok::Ident && !is_allen_keyword(t.text)) {
      MiniTok id = lex_.take();
      if (!alphabet_.contains(id.text)) {
        throw Error(ErrorKind::UnknownSymbol, id.span, "unknown atom '" + id.text + "'");
      }
      return tcl_atom(id.text);
    }
    throw Error(ErrorKind::SyntaxError, t.span, "expected a TCL formula");
  }

  MiniLexer lex_;
  const Alphabet& alphabet_;
};

int tcl_level(const TCLNode* f) {
  switch (f->kind) {
    case TCLKind::Atom: return 5;
    case TCLKind::Not: return 4;
    case TCLKind::Allen: return 3;
    case TCLKind::And: return 2;
    case TCLKind::Or: return 1;
  }
  return 0;
}

void tcl_render(const TCLNode* f, int min_level, std::string& out) {
  bool parens = tcl_level(f) < min_level;
  if (parens) out += "(";
  switch (f->kind) {
    case TCLKind::Atom:
      out += f->name;
      break;
    case TCLKind::Not:
      out += "!";
      tcl_render(f->lhs.get(), 4, out);
      break;
    case TCLKind::Allen:
      tcl_render(f->lhs.get(), 4, out);
      out += ' ';
      out += allen_letter_of(f->allen);
      out += ' ';
      tcl_render(f->rhs.get(), 3, out);
      break;
    case TCLKind::And:
      tcl_render(f->lhs.get(), 2, out);
      out += " & ";
      tcl_render(f->rhs.get(), 3, out);
      break;
    case TCLKind::Or:
      tcl_render(f->lhs.get(), 1, out);
      out += " | ";
      tcl_render(f->rhs.get(), 2, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

FormulaPtr tcl_to_tel(const TCLPtr& f) { return tcl_translate(f.get()); }

TCLPtr parse_tcl(const std::string& text, const Alphabet& alphabet) {
  TCLParser p(text, alphabet);
  return p.parse();
}

std::string print_tcl(const TCLPtr& f) {
  std::string out;
  tcl_render(f.get(), 0, out);
  return out;
}

}  // namespace tel
