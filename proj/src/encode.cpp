#include "tel/encode.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tel {

namespace {

TermPtr tv(const char* name) { return term_var(name); }
TermPtr tc(long long k) { return term_const(k); }
TermPtr plus(TermPtr a, TermPtr b) { return term_sum(std::move(a), std::move(b)); }

/* Tree node count with sharing-aware memoization; shared subtrees still
 * count once per occurrence, as a real tree would. */
long long tree_size(const FormulaNode* f, std::map<const FormulaNode*, long long>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  long long n = 1;
  if (f->lhs) n += tree_size(f->lhs.get(), memo);
  if (f->rhs) n += tree_size(f->rhs.get(), memo);
  memo.emplace(f, n);
  return n;
}

long long tree_size(const FormulaPtr& f) {
  std::map<const FormulaNode*, long long> memo;
  return tree_size(f.get(), memo);
}

}  // namespace

std::string product_letter(const std::string& top, const std::string& bottom) {
  return top + "__" + bottom;
}

FormulaPtr word_block(const std::vector<std::string>& w, long long s) {
  if (w.empty()) throw Error(ErrorKind::EmptyWord, "word block needs at least one letter");
  if (s < 0) throw Error(ErrorKind::InvalidArgument, "shift must be non-negative");
  std::vector<FormulaPtr> parts;
  parts.reserve(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    parts.push_back(shift(atom(w[j]), static_cast<long long>(j)));
  }
  return shift(and_all(parts), s);
}

/* --- Buchi -------------------------------------------------------------- */

BuchiAutomaton buchi_from_json(const nlohmann::json& j) {
  BuchiAutomaton a;
  a.states = j.at("states").get<std::vector<std::string>>();
  a.letters = j.at("alphabet").get<std::vector<std::string>>();
  a.initial = j.at("initial").get<std::string>();
  for (const auto& t : j.at("transitions")) {
    if (!t.is_array() || t.size() != 3) {
      throw Error(ErrorKind::InvalidArgument, "transition must be a [state, letter, state] triple");
    }
    a.transitions.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                             t[2].get<std::string>()});
  }
  a.accepting = j.at("accepting").get<std::vector<std::string>>();
  validate_automaton(a);
  return a;
}

void validate_automaton(const BuchiAutomaton& a) {
  std::set<std::string> q(a.states.begin(), a.states.end());
  std::set<std::string> s(a.letters.begin(), a.letters.end());
  if (a.states.empty() || q.size() != a.states.size()) {
    throw Error(ErrorKind::InvalidArgument, "states must be non-empty and unique");
  }
  if (a.letters.empty() || s.size() != a.letters.size()) {
    throw Error(ErrorKind::InvalidArgument, "alphabet must be non-empty and unique");
  }
  if (!q.count(a.initial)) {
    throw Error(ErrorKind::InvalidArgument, "initial state is not declared");
  }
  for (const auto& t : a.transitions) {
    if (!q.count(t[0]) || !s.count(t[1]) || !q.count(t[2])) {
      throw Error(ErrorKind::InvalidArgument, "transition references an undeclared state or letter");
    }
  }
  for (const auto& f : a.accepting) {
    if (!q.count(f)) throw Error(ErrorKind::InvalidArgument, "accepting state is not declared");
  }
}

Alphabet buchi_alphabet(const BuchiAutomaton& a) {
  std::vector<std::string> symbols;
  for (const auto& q : a.states) {
    for (const auto& l : a.letters) symbols.push_back(product_letter(q, l));
  }
  return Alphabet(symbols, AtomMode::Letters);
}

FormulaPtr encode_runs(const BuchiAutomaton& a) {
  validate_automaton(a);
  Alphabet sigma = buchi_alphabet(a);
  /* initial two tiles */
  std::vector<FormulaPtr> first;
  for (const auto& t : a.transitions) {
    if (t[0] != a.initial) continue;
    for (const auto& b : a.letters) {
      first.push_back(and_(atom(product_letter(t[0], t[1])),
                           shift(atom(product_letter(t[2], b)), 1)));
    }
  }
  FormulaPtr phi0 = first.empty() ? bottom(sigma) : or_all(first);
  /* every later tile follows from its predecessor by some transition */
  std::vector<FormulaPtr> steps;
  for (const auto& p : a.states) {
    for (const auto& l : a.letters) {
      std::vector<FormulaPtr> successors;
      for (const auto& t : a.transitions) {
        if (t[0] != p || t[1] != l) continue;
        for (const auto& b : a.letters) {
          successors.push_back(shift(atom(product_letter(t[2], b)), plus(tv("x"), tc(1))));
        }
      }
      FormulaPtr next = successors.empty() ? bottom(sigma) : or_all(successors);
      steps.push_back(forall("x", implies(shift(atom(product_letter(p, l)), tv("x")), next)));
    }
  }
  return and_(phi0, and_all(steps));
}

FormulaPtr encode_acceptance(const BuchiAutomaton& a) {
  validate_automaton(a);
  std::vector<FormulaPtr> hits;
  for (const auto& f : a.accepting) {
    for (const auto& l : a.letters) {
      hits.push_back(shift(atom(product_letter(f, l)), plus(tv("x"), tv("y"))));
    }
  }
  FormulaPtr inner = hits.empty() ? bottom(buchi_alphabet(a)) : or_all(hits);
  return forall("y", exists("x", inner));
}

/* --- correspondence layout ---------------------------------------------- */

namespace {

std::string sym(char c) { return std::string(1, c); }
std::string dotted(char c) { return "d" + sym(c); }
std::string ddotted(char c) { return "dd" + sym(c); }

std::vector<std::string> decorate(const std::string& w, const char* lead) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    out.push_back(j == 0 ? lead + sym(w[j]) : sym(w[j]));
  }
  return out;
}

/* The two-zone skeleton: zone 1 = positions 1..x over `zone1`, cent at x+1,
 * zone 2 = positions x+2..x+y+1 over `zone2`, all hash afterwards. `extras`
 * are conjoined inside the exists x exists y scope. */
FormulaPtr two_zone_skeleton(FormulaPtr zone1, FormulaPtr zone2,
                             std::vector<FormulaPtr> extras) {
  std::vector<FormulaPtr> parts;
  parts.push_back(shift(atom("cent"), tv("x")));
  parts.push_back(box(tv("x"), std::move(zone1)));
  parts.push_back(shift(box(tv("y"), std::move(zone2)), plus(tv("x"), tc(1))));
  parts.push_back(shift(box_inf(atom("hash")), plus(plus(tv("x"), tv("y")), tc(1))));
  for (auto& e : extras) parts.push_back(std::move(e));
  return exists("x", exists("y", and_all(parts)));
}

/* The matching core shared by the correspondence lemma and the PCP encoding:
 * sources src_i start in zone 1, matchers m1_i start at zone 2 offsets. rev_i
 * is the zone-2 trigger for the backward direction (the matcher itself when
 * exact, the source's zone-2 twin when counting). */
FormulaPtr correspondence_core(const std::vector<FormulaPtr>& src,
                               const std::vector<FormulaPtr>& fwd,
                               const std::vector<FormulaPtr>& rev_trigger,
                               const std::vector<FormulaPtr>& rev_target) {
  std::size_t n = src.size();
  TermPtr z1 = plus(tv("z"), tc(1));
  std::vector<FormulaPtr> parts;
  parts.push_back(shift(atom("cent"), tv("z")));
  /* the leading words on both sides correspond */
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(implies(src[i], shift(fwd[i], z1)));
    parts.push_back(implies(shift(rev_trigger[i], z1), rev_target[i]));
  }
  /* every zone-1 occurrence has a zone-2 partner in the same relative order */
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FormulaPtr> order;
    order.push_back(shift(fwd[i], plus(z1, tv("y"))));
    for (std::size_t j = 0; j < n; ++j) {
      order.push_back(forall("s", implies(shift(src[j], plus(tv("x"), tv("s"))),
                                          exists("t", shift(fwd[j], plus(plus(z1, tv("y")), tv("t")))))));
    }
    parts.push_back(forall("x", implies(shift(src[i], tv("x")),
                                        exists("y", and_all(order)))));
  }
  /* and conversely for zone-2 occurrences */
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FormulaPtr> order;
    order.push_back(shift(rev_target[i], tv("y")));
    for (std::size_t j = 0; j < n; ++j) {
      order.push_back(forall("s", implies(shift(rev_trigger[j], plus(plus(z1, tv("x")), tv("s"))),
                                          exists("t", shift(rev_target[j], plus(tv("y"), tv("t")))))));
    }
    parts.push_back(forall("x", implies(shift(rev_trigger[i], plus(z1, tv("x"))),
                                        exists("y", and_all(order)))));
  }
  return exists("z", and_all(parts));
}

}  // namespace

Alphabet correspondence_alphabet(const std::vector<std::string>& words) {
  std::set<char> base;
  for (const auto& w : words) base.insert(w.begin(), w.end());
  std::vector<std::string> symbols;
  for (char c : base) {
    symbols.push_back(sym(c));
    symbols.push_back(dotted(c));
    symbols.push_back(ddotted(c));
  }
  symbols.push_back("cent");
  symbols.push_back("hash");
  return Alphabet(symbols, AtomMode::Letters);
}

FormulaPtr lemma_correspondence(const std::vector<std::string>& words,
                                CorrespondenceVariant variant) {
  if (words.empty()) throw Error(ErrorKind::EmptyWordSet, "word set must be non-empty");
  for (const auto& w : words) {
    if (w.empty()) throw Error(ErrorKind::EmptyWord, "words must be non-empty");
  }
  std::set<char> base;
  for (const auto& w : words) base.insert(w.begin(), w.end());
  std::vector<FormulaPtr> plain, dots, ddots;
  for (char c : base) {
    plain.push_back(atom(sym(c)));
    dots.push_back(atom(dotted(c)));
    ddots.push_back(atom(ddotted(c)));
  }
  FormulaPtr plain_dis = or_all(plain), dot_dis = or_all(dots), ddot_dis = or_all(ddots);

  std::size_t n = words.size();
  std::vector<FormulaPtr> iota_dot, iota_ddot;
  std::vector<long long> kappa;
  for (const auto& w : words) {
    iota_dot.push_back(word_block(decorate(w, "d"), 0));
    iota_ddot.push_back(word_block(decorate(w, "dd"), 0));
    kappa.push_back(static_cast<long long>(w.size()));
  }

  /* zone-1 stacking: every dotted letter heads a word that ends flush against
   * the next word or against cent; dually in zone 2 against hash */
  std::vector<FormulaPtr> starts_dot, starts_ddot;
  for (std::size_t i = 0; i < n; ++i) {
    starts_dot.push_back(and_(iota_dot[i], shift(or_(dot_dis, atom("cent")), kappa[i])));
    starts_ddot.push_back(and_(iota_ddot[i], shift(or_(ddot_dis, atom("hash")), kappa[i])));
  }
  FormulaPtr chi_dot = or_all(starts_dot);
  FormulaPtr chi_ddot = or_all(starts_ddot);

  std::vector<FormulaPtr> extras;
  extras.push_back(or_all(iota_dot));
  extras.push_back(box(tv("x"), implies(dot_dis, chi_dot)));
  extras.push_back(shift(and_(or_all(iota_ddot),
                              box(tv("y"), implies(ddot_dis, chi_ddot))),
                         plus(tv("x"), tc(1))));
  FormulaPtr phi1 = two_zone_skeleton(or_(plain_dis, dot_dis),
                                      or_(plain_dis, ddot_dis), std::move(extras));

  FormulaPtr phi2;
  if (variant == CorrespondenceVariant::Exact) {
    phi2 = correspondence_core(iota_dot, iota_ddot, iota_ddot, iota_dot);
  } else {
    /* counting only: targets collapse to "some counted start" */
    std::vector<FormulaPtr> fwd(n, chi_ddot), rev(n, chi_dot);
    phi2 = correspondence_core(iota_dot, fwd, iota_ddot, rev);
  }
  return and_(phi1, phi2);
}

/* --- PCP ------------------------------------------------------------------ */

PCPInstance pcp_from_json(const nlohmann::json& j) {
  PCPInstance inst;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) {
      throw Error(ErrorKind::InvalidArgument, "pair must be a [top, bottom] couple");
    }
    inst.pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  validate_instance(inst);
  return inst;
}

void validate_instance(const PCPInstance& inst) {
  if (inst.pairs.empty()) throw Error(ErrorKind::EmptyWordSet, "instance needs at least one pair");
  for (const auto& [u, v] : inst.pairs) {
    if (u.empty() || v.empty()) throw Error(ErrorKind::EmptyWord, "pair words must be non-empty");
    for (char c : u + v) {
      if (c != '0' && c != '1') {
        throw Error(ErrorKind::InvalidArgument, "pair words must be binary");
      }
    }
  }
}

namespace {

const std::vector<std::string>& pcp_components() {
  static const std::vector<std::string> c = {"0", "1", "d0", "d1", "dd0", "dd1", "pad"};
  return c;
}

/* Domino tile column j of pair (u, v): leading letters dotted, the shorter
 * word padded out to the domino width. */
std::vector<std::string> domino_tiles(const std::string& u, const std::string& v) {
  std::size_t width = std::max(u.size(), v.size());
  std::vector<std::string> tiles;
  for (std::size_t j = 0; j < width; ++j) {
    std::string top = j < u.size() ? (j == 0 ? dotted(u[j]) : sym(u[j])) : "pad";
    std::string bot = j < v.size() ? (j == 0 ? dotted(v[j]) : sym(v[j])) : "pad";
    tiles.push_back(product_letter(top, bot));
  }
  return tiles;
}

/* All matching zone-2 segments for one row of a domino: the row string with a
 * double-dotted first letter, the other row ranging over all decorations. */
FormulaPtr row_matcher(const std::string& row, bool row_is_top) {
  static const std::vector<std::string> free_syms = {"0", "1", "dd0", "dd1"};
  std::vector<std::string> partial(row.size());
  std::vector<FormulaPtr> disjuncts;
  auto emit = [&](auto&& self, std::size_t j) -> void {
    if (j == row.size()) {
      disjuncts.push_back(word_block(partial, 0));
      return;
    }
    std::string fixed = j == 0 ? ddotted(row[j]) : sym(row[j]);
    for (const auto& other : free_syms) {
      partial[j] = row_is_top ? product_letter(fixed, other) : product_letter(other, fixed);
      self(self, j + 1);
    }
  };
  emit(emit, 0);
  return or_all(disjuncts);
}

}  // namespace

Alphabet pcp_alphabet() {
  std::vector<std::string> symbols;
  for (const auto& t : pcp_components()) {
    for (const auto& b : pcp_components()) symbols.push_back(product_letter(t, b));
  }
  symbols.push_back("cent");
  symbols.push_back("hash");
  return Alphabet(symbols, AtomMode::Letters);
}

FormulaPtr pcp_encode(const PCPInstance& inst, long long node_budget) {
  validate_instance(inst);
  /* the matchers enumerate 4^len decorations; refuse runaway instances early */
  long long est = 0;
  for (const auto& [u, v] : inst.pairs) {
    long long len = static_cast<long long>(std::max(u.size(), v.size()));
    if (len > 9) throw Error(ErrorKind::InvalidArgument, "pair word too long for the node budget");
    long long blocks = 1;
    for (long long j = 0; j < len; ++j) blocks *= 4;
    est += blocks * (2 * len + 1) * 4 * static_cast<long long>(inst.pairs.size());
    if (est > node_budget) {
      throw Error(ErrorKind::InvalidArgument, "encoded formula would exceed the node budget");
    }
  }

  std::vector<std::string> plain2, lead2, zone2syms, agree;
  for (char a : {'0', '1'}) {
    for (char b : {'0', '1'}) {
      lead2.push_back(product_letter(dotted(a), dotted(b)));
    }
  }
  const std::vector<std::string> loose = {"0", "1", "pad"};
  for (const auto& t : loose) {
    for (const auto& b : loose) plain2.push_back(product_letter(t, b));
  }
  const std::vector<std::string> sol = {"0", "1", "dd0", "dd1"};
  for (const auto& t : sol) {
    for (const auto& b : sol) {
      zone2syms.push_back(product_letter(t, b));
      if (t.back() == b.back()) agree.push_back(product_letter(t, b));  // 0 = dd0, 1 = dd1
    }
  }
  auto dis = [](const std::vector<std::string>& ss) {
    std::vector<FormulaPtr> atoms;
    atoms.reserve(ss.size());
    for (const auto& s : ss) atoms.push_back(atom(s));
    return or_all(atoms);
  };
  FormulaPtr zone1_dis = or_(dis(plain2), dis(lead2));
  FormulaPtr lead_dis = dis(lead2);

  std::vector<FormulaPtr> iota, tau, lambda, starts;
  std::vector<long long> kappa;
  for (const auto& [u, v] : inst.pairs) {
    iota.push_back(word_block(domino_tiles(u, v), 0));
    tau.push_back(row_matcher(u, true));
    lambda.push_back(row_matcher(v, false));
    kappa.push_back(static_cast<long long>(std::max(u.size(), v.size())));
  }
  for (std::size_t i = 0; i < iota.size(); ++i) {
    starts.push_back(and_(iota[i], shift(or_(lead_dis, atom("cent")), kappa[i])));
  }

  std::vector<FormulaPtr> extras;
  extras.push_back(or_all(iota));
  extras.push_back(box(tv("x"), implies(lead_dis, or_all(starts))));
  FormulaPtr phi1 = two_zone_skeleton(zone1_dis, dis(agree), std::move(extras));

  FormulaPtr phi2tau = correspondence_core(iota, tau, tau, iota);
  FormulaPtr phi2lambda = correspondence_core(iota, lambda, lambda, iota);
  FormulaPtr phi = and_(phi1, and_(phi2tau, phi2lambda));
  if (tree_size(phi) > node_budget) {
    throw Error(ErrorKind::InvalidArgument, "encoded formula exceeds the node budget");
  }
  return phi;
}

LassoWord pcp_witness(const PCPInstance& inst, const std::vector<int>& indices) {
  validate_instance(inst);
  if (indices.empty()) throw Error(ErrorKind::BadIndex, "index sequence must be non-empty");
  for (int i : indices) {
    if (i < 1 || static_cast<std::size_t>(i) > inst.pairs.size()) {
      throw Error(ErrorKind::BadIndex, "index " + std::to_string(i) + " is out of range");
    }
  }
  std::vector<Letter> prefix;
  std::string top_row, bottom_row;
  std::set<std::size_t> top_starts, bottom_starts;  // 0-based offsets into the rows
  for (int i : indices) {
    const auto& [u, v] = inst.pairs[static_cast<std::size_t>(i - 1)];
    for (const auto& t : domino_tiles(u, v)) prefix.push_back({t});
    top_starts.insert(top_row.size());
    bottom_starts.insert(bottom_row.size());
    top_row += u;
    bottom_row += v;
  }
  prefix.push_back({"cent"});
  /* Solution zone: for a genuine solution both rows agree; otherwise the
   * shorter row borrows the longer one's letters and the word simply fails
   * the encoding. */
  std::size_t len = std::max(top_row.size(), bottom_row.size());
  for (std::size_t j = 0; j < len; ++j) {
    char tc_ = j < top_row.size() ? top_row[j] : bottom_row[j];
    char bc = j < bottom_row.size() ? bottom_row[j] : top_row[j];
    std::string t = top_starts.count(j) && j < top_row.size() ? ddotted(tc_) : sym(tc_);
    std::string b = bottom_starts.count(j) && j < bottom_row.size() ? ddotted(bc) : sym(bc);
    prefix.push_back({product_letter(t, b)});
  }
  prefix.push_back({"hash"});
  return LassoWord(prefix, {{"hash"}}, pcp_alphabet());
}

}  // namespace tel
