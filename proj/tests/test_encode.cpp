#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "generators.hpp"
#include "tel/encode.hpp"
#include "tel/eval.hpp"
#include "tel/syntax.hpp"
#include "tel/words.hpp"

using namespace tel;

namespace {

Truth3 member(const LassoWord& w, const FormulaPtr& f) {
  EvalConfig cfg;
  cfg.quant_bound = w.prefix_size() + 2 * w.loop_size() + 2;
  cfg.assume_complete = true;
  return language_member(w, f, cfg);
}

LassoWord tile_word(const BuchiAutomaton& a,
                    const std::vector<std::pair<std::string, std::string>>& prefix,
                    const std::vector<std::pair<std::string, std::string>>& loop) {
  std::vector<Letter> p, l;
  for (const auto& [q, s] : prefix) p.push_back({product_letter(q, s)});
  for (const auto& [q, s] : loop) l.push_back({product_letter(q, s)});
  return LassoWord(std::move(p), std::move(l), buchi_alphabet(a));
}

/* Direct run simulation: tile 1 carries the initial state, and every adjacent
 * tile pair (including the loop wrap) is a transition. */
bool is_run(const BuchiAutomaton& a, const LassoWord& w) {
  auto split = [](const Letter& l) {
    const std::string& s = *l.begin();
    auto k = s.find("__");
    return std::pair<std::string, std::string>(s.substr(0, k), s.substr(k + 2));
  };
  if (split(w.letter_at(1)).first != a.initial) return false;
  long long lp = w.prefix_size() + w.loop_size();
  for (long long i = 1; i <= lp; ++i) {
    auto [q, x] = split(w.letter_at(i));
    auto [r, y] = split(w.letter_at(i + 1));
    (void)y;
    bool found = false;
    for (const auto& tr : a.transitions) {
      if (tr[0] == q && tr[1] == x && tr[2] == r) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("word blocks pin exact prefixes") {
  Alphabet sigma({"a", "b", "c", "d", "x"}, AtomMode::Letters);
  LassoWord w = parse_word("a;b;c | d", sigma);
  CHECK(eval_exact_qf(w, 1, word_block({"a", "b", "c"}, 0)));
  CHECK_FALSE(eval_exact_qf(w, 1, word_block({"b", "c"}, 0)));

  LassoWord v = parse_word("x;a;b;c | d", sigma);
  CHECK(eval_exact_qf(v, 1, word_block({"a", "b", "c"}, 1)));

  CHECK(formula_equal(word_block({"a"}, 0), atom("a")));
  CHECK_THROWS_AS(word_block({}, 0), Error);
  CHECK_THROWS_AS(word_block({"a"}, -1), Error);
}

TEST_CASE("buchi json loading and validation") {
  nlohmann::json j = {
      {"states", {"q0", "q1"}},
      {"alphabet", {"a", "b"}},
      {"initial", "q0"},
      {"transitions", {{"q0", "a", "q1"}, {"q1", "b", "q0"}}},
      {"accepting", {"q1"}},
  };
  BuchiAutomaton a = buchi_from_json(j);
  CHECK(a.states.size() == 2);
  CHECK(a.transitions.size() == 2);
  validate_automaton(a);

  auto bad = j;
  bad["initial"] = "qz";
  CHECK_THROWS_AS(buchi_from_json(bad), Error);
  auto bad2 = j;
  bad2["transitions"].push_back({"q0", "z", "q1"});
  CHECK_THROWS_AS(buchi_from_json(bad2), Error);
}

TEST_CASE("run encoding accepts exactly the runs") {
  BuchiAutomaton a;
  a.states = {"q0", "q1"};
  a.letters = {"a", "b"};
  a.initial = "q0";
  a.transitions = {{"q0", "a", "q1"}, {"q1", "b", "q0"}};
  a.accepting = {"q1"};
  auto runs = encode_runs(a);

  LassoWord good = tile_word(a, {}, {{"q0", "a"}, {"q1", "b"}});
  CHECK(member(good, runs) == Truth3::True);
  CHECK(is_run(a, good));

  // initial-state violation
  LassoWord bad_init = tile_word(a, {{"q1", "a"}}, {{"q0", "a"}, {"q1", "b"}});
  CHECK(member(bad_init, runs) == Truth3::False);

  // adjacent pair outside the transition relation
  LassoWord bad_step = tile_word(a, {{"q0", "a"}}, {{"q0", "a"}, {"q1", "b"}});
  CHECK(member(bad_step, runs) == Truth3::False);
  CHECK_FALSE(is_run(a, bad_step));
}

TEST_CASE("acceptance encoding tracks the loop") {
  BuchiAutomaton a;
  a.states = {"q0", "q1"};
  a.letters = {"a", "b"};
  a.initial = "q0";
  a.transitions = {{"q0", "a", "q1"}, {"q1", "b", "q0"}};
  a.accepting = {"q1"};
  auto acc = encode_acceptance(a);

  LassoWord in_loop = tile_word(a, {}, {{"q0", "a"}, {"q1", "b"}});
  CHECK(member(in_loop, acc) == Truth3::True);

  LassoWord only_prefix = tile_word(a, {{"q1", "b"}}, {{"q0", "a"}});
  CHECK(member(only_prefix, acc) == Truth3::False);

  BuchiAutomaton none = a;
  none.accepting = {};
  CHECK(member(in_loop, encode_acceptance(none)) == Truth3::False);
}

TEST_CASE("exhaustive desk-scale run check") {
  gen::Rng rng(7601);
  for (int sample = 0; sample < 25; ++sample) {
    BuchiAutomaton a;
    a.states = {"q0", "q1"};
    a.letters = {"a", "b"};
    a.initial = "q0";
    a.accepting = {"q1"};
    for (const auto& q : a.states) {
      for (const auto& s : a.letters) {
        for (const auto& r : a.states) {
          if (gen::pick(rng, 0, 1)) a.transitions.push_back({q, s, r});
        }
      }
    }
    auto runs = encode_runs(a);
    auto acc = encode_acceptance(a);

    // all tile lassos with l + p <= 3
    std::vector<std::pair<std::string, std::string>> tiles;
    for (const auto& q : a.states) {
      for (const auto& s : a.letters) tiles.emplace_back(q, s);
    }
    long long n = static_cast<long long>(tiles.size());
    for (long long ell = 0; ell <= 2; ++ell) {
      for (long long p = 1; ell + p <= 3; ++p) {
        long long total = 1;
        for (long long i = 0; i < ell + p; ++i) total *= n;
        for (long long code = 0; code < total; ++code) {
          long long c = code;
          std::vector<std::pair<std::string, std::string>> pre, loop;
          for (long long i = 0; i < ell; ++i) {
            pre.push_back(tiles[static_cast<std::size_t>(c % n)]);
            c /= n;
          }
          for (long long i = 0; i < p; ++i) {
            loop.push_back(tiles[static_cast<std::size_t>(c % n)]);
            c /= n;
          }
          LassoWord w = tile_word(a, pre, loop);
          CHECK((member(w, runs) == Truth3::True) == is_run(a, w));
          std::set<std::string> ftiles;
          for (const auto& s : a.letters) ftiles.insert(product_letter("q1", s));
          CHECK((member(w, acc) == Truth3::True) == holds_infinitely_often(w, ftiles));
        }
      }
    }
  }
}

TEST_CASE("correspondence lemma variants") {
  std::vector<std::string> W{"ab"};
  Alphabet sigma = correspondence_alphabet(W);
  auto exact = lemma_correspondence(W, CorrespondenceVariant::Exact);
  auto count = lemma_correspondence(W, CorrespondenceVariant::CountOnly);
  CHECK(is_closed(exact));

  LassoWord good = parse_word("da;b;cent;dda;b;hash | hash", sigma);
  CHECK(member(good, exact) == Truth3::True);
  CHECK(member(good, count) == Truth3::True);

  // two dominoes against one solution word: counts differ
  LassoWord uneven = parse_word("da;b;da;b;cent;dda;b;hash | hash", sigma);
  CHECK(member(uneven, exact) == Truth3::False);
  CHECK(member(uneven, count) == Truth3::False);

  std::vector<std::string> W2{"ab", "cd"};
  Alphabet sigma2 = correspondence_alphabet(W2);
  auto exact2 = lemma_correspondence(W2, CorrespondenceVariant::Exact);
  auto count2 = lemma_correspondence(W2, CorrespondenceVariant::CountOnly);
  LassoWord mixed = parse_word("da;b;cent;ddc;d;hash | hash", sigma2);
  CHECK(member(mixed, exact2) == Truth3::False);
  CHECK(member(mixed, count2) == Truth3::True);

  CHECK_THROWS_AS(lemma_correspondence({}, CorrespondenceVariant::Exact), Error);
}

TEST_CASE("pcp witness layout") {
  PCPInstance inst{{{"01", "01"}}};
  validate_instance(inst);
  LassoWord w = pcp_witness(inst, {1});
  CHECK(print_word(w) == "d0__d0;1__1;cent;dd0__dd0;1__1;hash | hash");

  CHECK_THROWS_AS(pcp_witness(inst, {}), Error);
  CHECK_THROWS_AS(pcp_witness(inst, {2}), Error);
  CHECK_THROWS_AS(pcp_witness(inst, {0}), Error);
}

TEST_CASE("pcp encoding accepts its witnesses") {
  PCPInstance inst{{{"01", "01"}}};
  auto phi = pcp_encode(inst);
  CHECK(is_closed(phi));

  CHECK(member(pcp_witness(inst, {1}), phi) == Truth3::True);
  CHECK(member(pcp_witness(inst, {1, 1}), phi) == Truth3::True);

  // corrupt one solution-zone letter: the per-position agreement fails
  LassoWord w = pcp_witness(inst, {1});
  std::vector<Letter> prefix = w.prefix();
  prefix[4] = Letter{product_letter("1", "0")};
  LassoWord bad(prefix, w.loop(), w.alphabet());
  CHECK(member(bad, phi) == Truth3::False);
}

TEST_CASE("pcp json and guards") {
  PCPInstance inst = pcp_from_json(nlohmann::json::parse(R"({"pairs":[["01","01"]]})"));
  CHECK(inst.pairs.size() == 1);
  CHECK_THROWS_AS(pcp_from_json(nlohmann::json::parse(R"({"pairs":[]})")), Error);
  CHECK_THROWS_AS(pcp_from_json(nlohmann::json::parse(R"({"pairs":[["01",""]]})")), Error);
  CHECK_THROWS_AS(pcp_from_json(nlohmann::json::parse(R"({"pairs":[["01","02"]]})")), Error);

  // the node budget rejects instances whose matchers would blow up
  PCPInstance big{{{"01010101", "10101010"}}};
  CHECK_THROWS_AS(pcp_encode(big, 1000), Error);
}
