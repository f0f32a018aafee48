#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "tel/eval.hpp"
#include "tel/syntax.hpp"
#include "tel/translate.hpp"
#include "tel/words.hpp"

using namespace tel;

namespace {

const Alphabet kSigma({"a", "b", "c"}, AtomMode::Letters);
const Alphabet kProps({"p", "q"}, AtomMode::Props);

Truth3 bounded(const LassoWord& w, long long i, const FormulaPtr& f) {
  EvalConfig cfg;
  cfg.quant_bound = w.prefix_size() + 2 * w.loop_size();
  cfg.assume_complete = true;
  return eval(w, i, f, {}, cfg);
}

}  // namespace

TEST_CASE("ltl evaluation on hand words") {
  LassoWord w = parse_word("a;b | b", kSigma);
  CHECK(ltl_eval(w, 2, ltl_globally(ltl_atom("b"))));
  CHECK_FALSE(ltl_eval(w, 1, ltl_globally(ltl_atom("b"))));

  LassoWord v = parse_word("a | b", kSigma);
  CHECK(ltl_eval(v, 1, ltl_finally(ltl_atom("b"))));
  CHECK_FALSE(ltl_eval(v, 1, ltl_globally(ltl_atom("a"))));

  LassoWord u = parse_word("a;a;b | c", kSigma);
  auto aub = ltl_until(ltl_atom("a"), ltl_atom("b"));
  CHECK(ltl_eval(u, 1, aub));
  CHECK_FALSE(ltl_eval(u, 4, aub));  // pure c suffix

  // k = 0 is included: b U a holds immediately at an a position.
  CHECK(ltl_eval(u, 1, ltl_until(ltl_atom("b"), ltl_atom("a"))));
  CHECK(ltl_eval(u, 1, ltl_next(ltl_atom("a"))));
  CHECK_FALSE(ltl_eval(u, 2, ltl_next(ltl_atom("a"))));
}

TEST_CASE("ltl derived operators against their definitions") {
  gen::Rng rng(7501);
  for (int i = 0; i < 300; ++i) {
    LassoWord w = gen::random_word(rng, kSigma, 4, 4);
    auto a = gen::random_ltl(rng, kSigma, 1);
    auto b = gen::random_ltl(rng, kSigma, 1);
    long long pos = gen::pick(rng, 1, w.prefix_size() + w.loop_size());

    // phi W psi = G phi | (phi U psi); phi R psi = G psi | (phi M psi)
    CHECK(ltl_eval(w, pos, ltl_weak_until(a, b)) ==
          (ltl_eval(w, pos, ltl_globally(a)) || ltl_eval(w, pos, ltl_until(a, b))));
    CHECK(ltl_eval(w, pos, ltl_release(a, b)) ==
          (ltl_eval(w, pos, ltl_globally(b)) ||
           ltl_eval(w, pos, ltl_strong_release(a, b))));
    // F phi = true U phi; G phi = !F!phi
    CHECK(ltl_eval(w, pos, ltl_finally(a)) ==
          ltl_eval(w, pos, ltl_until(ltl_or(a, ltl_not(a)), a)));
    CHECK(ltl_eval(w, pos, ltl_globally(a)) ==
          !ltl_eval(w, pos, ltl_finally(ltl_not(a))));
  }
}

TEST_CASE("ltl translation shapes") {
  CHECK(print_formula(ltl_to_tel(ltl_next(ltl_atom("a")))) == "a @ 1");
  CHECK(print_formula(ltl_to_tel(ltl_finally(ltl_atom("a")))) ==
        "a | (exists x1 . a @ x1)");
  CHECK(print_formula(ltl_to_tel(ltl_until(ltl_atom("a"), ltl_atom("b")))) ==
        "b | (exists x1 . b @ x1 & [x1] a)");
  CHECK(is_closed(ltl_to_tel(ltl_until(ltl_globally(ltl_atom("a")),
                                       ltl_finally(ltl_atom("b"))))));
}

TEST_CASE("ltl differential against the translation") {
  gen::Rng rng(7502);
  for (int i = 0; i < 200; ++i) {
    LassoWord w = gen::random_word(rng, kSigma, 4, 4);
    auto f = gen::random_ltl(rng, kSigma, 3);
    auto t = ltl_to_tel(f);
    for (long long pos = 1; pos <= w.prefix_size() + w.loop_size(); ++pos) {
      bool oracle = ltl_eval(w, pos, f);
      Truth3 got = bounded(w, pos, t);
      CHECK(got == (oracle ? Truth3::True : Truth3::False));
    }
  }
}

TEST_CASE("ltl parser and printer") {
  auto f = parse_ltl("a U b | X c", kSigma);
  CHECK(print_ltl(parse_ltl(print_ltl(f), kSigma)) == print_ltl(f));
  // U binds tighter than |, right-associative among temporal infixes
  auto g = parse_ltl("a U b U c", kSigma);
  REQUIRE(g->kind == LTLKind::Until);
  CHECK(g->rhs->kind == LTLKind::Until);
  CHECK_THROWS_AS(parse_ltl("a U", kSigma), Error);
  CHECK_THROWS_AS(parse_ltl("d", kSigma), Error);

  gen::Rng rng(7503);
  for (int i = 0; i < 200; ++i) {
    auto r = gen::random_ltl(rng, kSigma, 3);
    std::string s = print_ltl(r);
    CHECK(print_ltl(parse_ltl(s, kSigma)) == s);
  }
}

TEST_CASE("tcl evaluation on hand words") {
  LassoWord w1 = parse_word("{p};{q} | {}", kProps);
  CHECK(tcl_eval(w1, 1, tcl_allen(AllenKind::Meets, tcl_atom("p"), tcl_atom("q"))));

  LassoWord w2 = parse_word("{p};{};{q} | {}", kProps);
  CHECK(tcl_eval(w2, 1, tcl_allen(AllenKind::Before, tcl_atom("p"), tcl_atom("q"))));
  CHECK_FALSE(tcl_eval(w2, 1, tcl_allen(AllenKind::Meets, tcl_atom("p"), tcl_atom("q"))));

  LassoWord w3 = parse_word("{p,q};{p} | {}", kProps);
  CHECK(tcl_eval(w3, 1, tcl_allen(AllenKind::StartedBy, tcl_atom("p"), tcl_atom("q"))));

  LassoWord w4 = parse_word("{p};{p,q} | {}", kProps);
  CHECK(tcl_eval(w4, 1, tcl_allen(AllenKind::FinishedBy, tcl_atom("p"), tcl_atom("q"))));

  LassoWord w5 = parse_word("{p};{p,q};{p} | {}", kProps);
  CHECK(tcl_eval(w5, 1, tcl_allen(AllenKind::Contains, tcl_atom("p"), tcl_atom("q"))));

  LassoWord w6 = parse_word("{p};{p,q};{q} | {}", kProps);
  CHECK(tcl_eval(w6, 1, tcl_allen(AllenKind::Overlaps, tcl_atom("p"), tcl_atom("q"))));
}

TEST_CASE("tcl boundary search matches an enlarged brute-force range") {
  gen::Rng rng(7504);
  for (int i = 0; i < 200; ++i) {
    LassoWord w = gen::random_word(rng, kProps, 4, 3);
    auto f = gen::random_tcl(rng, kProps, 2);
    // Positions in the loop repeat; evaluating at shifted copies of the same
    // canonical position must agree, which is what caps the search range.
    long long lp = w.prefix_size() + w.loop_size();
    for (long long s = w.prefix_size() + 1; s <= lp; ++s) {
      CHECK(tcl_eval(w, s, f) == tcl_eval(w, s + w.loop_size(), f));
    }
  }
}

TEST_CASE("tcl translation table rows") {
  auto p = tcl_atom("p");
  auto q = tcl_atom("q");
  auto meets = tcl_to_tel(tcl_allen(AllenKind::Meets, p, q));
  CHECK(print_formula(meets) ==
        "exists x1 . exists x2 . [x1] (p & !q) & ([x2] (q & !p)) @ x1 & "
        "(!p & !q & (forall x . (!p & !q) @ x)) @ (x1 + x2)");
  CHECK(is_closed(meets));
  CHECK(is_closed(tcl_to_tel(tcl_allen(AllenKind::Contains, p, q))));
}

TEST_CASE("tcl differential against the translation") {
  gen::Rng rng(7505);
  for (int i = 0; i < 150; ++i) {
    LassoWord w = gen::random_word(rng, kProps, 4, 2);
    auto f = gen::random_tcl(rng, kProps, 2);
    auto t = tcl_to_tel(f);
    bool oracle = tcl_eval(w, 1, f);
    Truth3 got = bounded(w, 1, t);
    CHECK(got == (oracle ? Truth3::True : Truth3::False));
  }
}

TEST_CASE("tcl parser and printer") {
  auto f = parse_tcl("p A q | !p D q", kProps);
  CHECK(print_tcl(parse_tcl(print_tcl(f), kProps)) == print_tcl(f));
  CHECK_THROWS_AS(parse_tcl("p A", kProps), Error);
  CHECK_THROWS_AS(parse_tcl("r", kProps), Error);
}

TEST_CASE("block templates") {
  auto one = block_closed({atom("a")});
  REQUIRE(one->kind == FKind::Exists);
  CHECK(one->lhs->kind == FKind::Box);

  // block_open([a]) = a & forall x . a @ x
  auto open1 = block_open({atom("a")});
  REQUIRE(open1->kind == FKind::And);
  CHECK(open1->rhs->kind == FKind::Forall);

  // block_open([a;b]) quantifies only the first window
  auto open2 = block_open({atom("a"), atom("b")});
  REQUIRE(open2->kind == FKind::Exists);

  CHECK_THROWS_AS(block_closed({}), Error);
  CHECK_THROWS_AS(block_open({}), Error);

  // block_closed([a;b]) is satisfied by a-blocks followed by b-blocks
  LassoWord w = parse_word("a;a;b | c", kSigma);
  EvalConfig cfg = default_config(w);
  auto two = block_closed({atom("a"), atom("b")});
  CHECK(language_member(w, two, cfg) == Truth3::True);
  auto wit = exists_witness(w, 1, two, cfg);
  REQUIRE(wit.has_value());
  CHECK(*wit == 2);
}

TEST_CASE("mode guards") {
  LassoWord letters = parse_word("a | b", kSigma);
  CHECK_THROWS_AS(tcl_eval(letters, 1, tcl_atom("p")), Error);
  LassoWord props = parse_word("{p} | {}", kProps);
  CHECK_THROWS_AS(ltl_eval(props, 1, ltl_atom("p")), Error);
  CHECK_THROWS_AS(ltl_eval(parse_word("a | b", kSigma), 0, ltl_atom("a")), Error);
}
