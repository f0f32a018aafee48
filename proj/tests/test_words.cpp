#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "tel/words.hpp"

using namespace tel;

namespace {

const Alphabet kLetters({"a", "b", "c", "d"}, AtomMode::Letters);
const Alphabet kProps({"p", "q"}, AtomMode::Props);

Letter L(const std::string& s) { return Letter{s}; }

}  // namespace

TEST_CASE("letter_at unrolls prefix then loop") {
  LassoWord w({L("a"), L("b")}, {L("c")}, kLetters);
  CHECK(w.letter_at(2) == L("b"));
  CHECK(w.letter_at(3) == L("c"));
  CHECK(w.letter_at(100) == L("c"));

  // prefix ab, loop cd: position 5 is the first repeat of the loop head.
  LassoWord w2({L("a"), L("b")}, {L("c"), L("d")}, kLetters);
  CHECK(w2.letter_at(5) == L("c"));
  CHECK(w2.letter_at(6) == L("d"));

  LassoWord w3({}, {L("a")}, kLetters);
  for (long long k = 1; k <= 20; ++k) CHECK(w3.letter_at(k) == L("a"));

  CHECK_THROWS_AS(w.letter_at(0), Error);
}

TEST_CASE("letter_at matches direct unrolling") {
  gen::Rng rng(7101);
  for (int trial = 0; trial < 100; ++trial) {
    LassoWord w = gen::random_word(rng, kLetters, 4, 4);
    std::vector<Letter> unrolled(w.prefix());
    while (static_cast<long long>(unrolled.size()) < w.prefix_size() + 5 * w.loop_size()) {
      for (const auto& l : w.loop()) unrolled.push_back(l);
    }
    for (std::size_t i = 0; i < unrolled.size(); ++i) {
      CHECK(w.letter_at(static_cast<long long>(i) + 1) == unrolled[i]);
    }
  }
}

TEST_CASE("canonical positions stay within one period and preserve suffixes") {
  // l=2, p=3: position 9 is 9-3 = 6 ≡ 0 (mod 3) past the prefix, so it maps
  // to the loop head at position 3.
  LassoWord w({L("a"), L("b")}, {L("c"), L("d"), L("a")}, kLetters);
  CHECK(w.canonical_position(9) == 3);
  for (long long i = 1; i <= 5; ++i) CHECK(w.canonical_position(i) == i);

  LassoWord constant({}, {L("a")}, kLetters);
  for (long long i = 1; i <= 10; ++i) CHECK(constant.canonical_position(i) == 1);

  gen::Rng rng(7102);
  for (int trial = 0; trial < 60; ++trial) {
    LassoWord r = gen::random_word(rng, kLetters, 4, 4);
    long long lp = r.prefix_size() + r.loop_size();
    for (long long i = 1; i <= 3 * lp + 5; ++i) {
      long long c = r.canonical_position(i);
      CHECK(c <= lp);
      CHECK(r.canonical_position(c) == c);  // idempotent
      // The whole suffix agrees, checked over three loop rounds.
      for (long long k = 0; k < 3 * r.loop_size(); ++k) {
        CHECK(r.letter_at(i + k) == r.letter_at(c + k));
      }
    }
  }
}

TEST_CASE("suffix periodicity beyond the prefix") {
  gen::Rng rng(7103);
  for (int trial = 0; trial < 60; ++trial) {
    LassoWord r = gen::random_word(rng, kProps, 4, 4);
    long long p = r.loop_size();
    for (long long i = r.prefix_size() + 1; i <= r.prefix_size() + 2 * p; ++i) {
      for (long long k = 0; k < 3 * p; ++k) {
        CHECK(r.letter_at(i + k) == r.letter_at(i + p + k));
      }
    }
  }
}

TEST_CASE("finite traces embed with empty-set padding") {
  FiniteTrace t{{Letter{"p"}, Letter{"q"}}, kProps};
  LassoWord w = from_finite(t);
  CHECK(w.prefix_size() == 2);
  CHECK(w.loop_size() == 1);
  CHECK(w.letter_at(1) == Letter{"p"});
  CHECK(w.letter_at(2) == Letter{"q"});
  CHECK(w.letter_at(3).empty());
  CHECK(w.letter_at(99).empty());
  CHECK(w.prefix_size() + w.loop_size() == 3);  // n + 1 canonical positions

  FiniteTrace bad{{Letter{"a"}}, Alphabet({"a"}, AtomMode::Letters)};
  CHECK_THROWS_AS(from_finite(bad), Error);
  CHECK_THROWS_AS(from_finite(FiniteTrace{{}, kProps}), Error);
}

TEST_CASE("letters mode rejects malformed positions") {
  CHECK_THROWS_AS(LassoWord({Letter{"a", "b"}}, {L("a")}, kLetters), Error);
  CHECK_THROWS_AS(LassoWord({Letter{}}, {L("a")}, kLetters), Error);
  CHECK_THROWS_AS(LassoWord({L("z")}, {L("a")}, kLetters), Error);
  CHECK_THROWS_AS(LassoWord({}, {}, kLetters), Error);
  // Props mode allows empty sets and multi-symbol sets.
  LassoWord ok({Letter{}, Letter{"p", "q"}}, {Letter{}}, kProps);
  CHECK(ok.letter_at(2) == Letter{"p", "q"});
}

TEST_CASE("word literals parse in both modes") {
  LassoWord w = parse_word("a;a;b;b | c", kLetters);
  CHECK(w.prefix_size() == 4);
  CHECK(w.loop_size() == 1);
  CHECK(w.letter_at(5) == L("c"));

  LassoWord v = parse_word("{p,q};{} | {}", kProps);
  CHECK(v.letter_at(1) == Letter{"p", "q"});
  CHECK(v.letter_at(2).empty());

  LassoWord noprefix = parse_word(" | b", kLetters);
  CHECK(noprefix.prefix_size() == 0);

  CHECK_THROWS_AS(parse_word("a;b", kLetters), Error);     // missing '|'
  CHECK_THROWS_AS(parse_word("a | ", kLetters), Error);    // empty loop
  CHECK_THROWS_AS(parse_word("a | z", kLetters), Error);   // unknown symbol
  CHECK_THROWS_AS(parse_word("p | {q}", kProps), Error);   // bare symbol in props mode
}

TEST_CASE("word print and parse round-trip") {
  gen::Rng rng(7104);
  for (int trial = 0; trial < 100; ++trial) {
    const Alphabet& sigma = (trial % 2) ? kProps : kLetters;
    LassoWord w = gen::random_word(rng, sigma, 5, 5);
    LassoWord back = parse_word(print_word(w), sigma);
    CHECK(back.prefix() == w.prefix());
    CHECK(back.loop() == w.loop());
  }
}

TEST_CASE("alphabet inference collects occurring symbols") {
  LassoWord w = parse_word("a;b | c", AtomMode::Letters);
  CHECK(w.alphabet().contains("a"));
  CHECK(w.alphabet().contains("c"));
  CHECK_FALSE(w.alphabet().contains("d"));
}
