#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "generators.hpp"
#include "tel/cohort.hpp"
#include "tel/syntax.hpp"
#include "tel/translate.hpp"

using namespace tel;

namespace {

struct TempCsv {
  std::string path;
  explicit TempCsv(const std::string& content) {
    static int counter = 0;
    path = "cohort_test_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << content;
  }
  ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("ingest maps rows to positions") {
  TempCsv f("subject_id,time,code\ns1,1,p\ns1,2,q\n");
  auto cohort = ingest_csv(f.path);
  REQUIRE(cohort.count("s1") == 1);
  const auto& t = cohort.at("s1");
  REQUIRE(t.positions.size() == 2);
  CHECK(t.positions[0] == Letter{"p"});
  CHECK(t.positions[1] == Letter{"q"});
}

TEST_CASE("gaps are filled with empty sets") {
  TempCsv f("subject_id,time,code\ns1,1,p\ns1,3,q\n");
  auto cohort = ingest_csv(f.path);
  const auto& t = cohort.at("s1");
  REQUIRE(t.positions.size() == 3);
  CHECK(t.positions[1].empty());
}

TEST_CASE("all subjects share one alphabet") {
  TempCsv f("subject_id,time,code\ns1,1,p\ns2,1,q\n");
  auto cohort = ingest_csv(f.path);
  CHECK(cohort.at("s1").alphabet.contains("q"));
  CHECK(cohort.at("s2").alphabet.contains("p"));
}

TEST_CASE("ingest errors identify the offending line") {
  {
    TempCsv f("subject_id,time,code\ns1,0,p\n");
    CHECK_THROWS_AS(ingest_csv(f.path), Error);
  }
  {
    TempCsv f("subject_id,time,code\ns1,x,p\n");
    try {
      ingest_csv(f.path);
      FAIL("expected a malformed-row error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
  }
  {
    TempCsv f("");
    CHECK_THROWS_AS(ingest_csv(f.path), Error);
  }
  {
    TempCsv f("id,when,what\ns1,1,p\n");
    CHECK_THROWS_AS(ingest_csv(f.path), Error);
  }
  CHECK_THROWS_AS(ingest_csv("no_such_file.csv"), Error);
}

TEST_CASE("date binning aligns half-open intervals to the origin") {
  TempCsv f(
      "subject_id,time,code\n"
      "s1,2024-01-01,p\n"
      "s1,2024-01-07,q\n"
      "s1,2024-01-08,r\n");
  auto weekly = ingest_csv(f.path, BinUnit::Week);
  const auto& t = weekly.at("s1");
  REQUIRE(t.positions.size() == 2);
  CHECK(t.positions[0] == Letter{"p", "q"});  // days 0..6 share bin 1
  CHECK(t.positions[1] == Letter{"r"});       // day 7 opens bin 2

  auto daily = ingest_csv(f.path, BinUnit::Day);
  CHECK(daily.at("s1").positions.size() == 8);

  auto monthly = ingest_csv(f.path, BinUnit::Month);
  CHECK(monthly.at("s1").positions.size() == 1);

  // explicit origin moves the bin boundaries
  auto shifted = ingest_csv(f.path, BinUnit::Week, "2023-12-31");
  CHECK(shifted.at("s1").positions.size() == 2);
  CHECK(shifted.at("s1").positions[0] == Letter{"p"});
}

TEST_CASE("ingestion round-trips through csv export") {
  TempCsv f(
      "subject_id,time,code\n"
      "s1,1,p\ns1,1,q\ns1,4,p\n"
      "s2,2,q\n");
  auto cohort = ingest_csv(f.path);
  TempCsv g(cohort_to_csv(cohort));
  auto back = ingest_csv(g.path);
  REQUIRE(back.size() == cohort.size());
  for (const auto& [id, trace] : cohort) {
    CHECK(back.at(id).positions == trace.positions);
  }
}

TEST_CASE("query evaluates each subject's padded lasso") {
  TempCsv f(
      "subject_id,time,code\n"
      "s1,1,p\ns1,2,q\n"
      "s2,1,q\ns2,2,p\n");
  auto cohort = ingest_csv(f.path);
  Alphabet sigma({"p", "q"}, AtomMode::Props);

  // p then q one step later, somewhere
  auto phi = parse_formula("<> (p & q @ 1)", sigma);
  EvalConfig cfg;
  cfg.quant_bound = 8;
  cfg.assume_complete = true;
  QueryReport r = run_query(phi, cohort, cfg);
  REQUIRE(r.subjects.size() == 2);
  CHECK(r.subjects[0].id == "s1");
  CHECK(r.subjects[0].truth == Truth3::True);
  CHECK(r.subjects[1].truth == Truth3::False);
  CHECK(r.true_count == 1);
  CHECK(r.false_count == 1);
  CHECK(r.unknown_count == 0);
}

TEST_CASE("query matches the allen oracle") {
  TempCsv f("subject_id,time,code\ns1,1,p\ns1,2,q\n");
  auto cohort = ingest_csv(f.path);
  auto phi = tcl_to_tel(tcl_allen(AllenKind::Meets, tcl_atom("p"), tcl_atom("q")));
  EvalConfig cfg;
  cfg.quant_bound = 8;
  cfg.assume_complete = true;
  QueryReport r = run_query(phi, cohort, cfg);
  REQUIRE(r.subjects.size() == 1);
  CHECK(r.subjects[0].truth == Truth3::True);
  CHECK(r.subjects[0].witness.has_value());
  CHECK(tcl_eval(from_finite(cohort.at("s1")), 1,
                 tcl_allen(AllenKind::Meets, tcl_atom("p"), tcl_atom("q"))));
}

TEST_CASE("existential witness and universal padding") {
  TempCsv f("subject_id,time,code\ns1,2,p\n");
  auto cohort = ingest_csv(f.path);
  Alphabet sigma({"p"}, AtomMode::Props);
  EvalConfig cfg;
  cfg.quant_bound = 8;

  auto ex = parse_formula("exists x . p @ x", sigma);
  QueryReport r1 = run_query(ex, cohort, cfg);
  CHECK(r1.subjects[0].truth == Truth3::True);

  // the empty-set padding falsifies p beyond the record, so forall closes
  // definitely once the bound exceeds the trace length
  auto all = parse_formula("forall x . p @ x", sigma);
  QueryReport r2 = run_query(all, cohort, cfg);
  CHECK(r2.subjects[0].truth == Truth3::False);
}

TEST_CASE("open formulas are rejected") {
  TempCsv f("subject_id,time,code\ns1,1,p\n");
  auto cohort = ingest_csv(f.path);
  EvalConfig cfg;
  CHECK_THROWS_AS(run_query(shift(atom("p"), term_var("x")), cohort, cfg), Error);
}

TEST_CASE("first-only stops at the first match") {
  TempCsv f("subject_id,time,code\ns1,1,p\ns1,2,p\ns1,3,p\n");
  auto cohort = ingest_csv(f.path);
  Alphabet sigma({"p"}, AtomMode::Props);
  auto phi = parse_formula("p", sigma);
  EvalConfig cfg;
  cfg.quant_bound = 4;

  QueryReport all = run_query(phi, cohort, cfg, PositionsMode::All);
  CHECK(all.subjects[0].positions == std::vector<long long>{1, 2, 3});
  QueryReport first = run_query(phi, cohort, cfg, PositionsMode::FirstOnly);
  CHECK(first.subjects[0].positions == std::vector<long long>{1});
  REQUIRE(first.subjects[0].witness.has_value());
  CHECK(*first.subjects[0].witness == 1);
}

TEST_CASE("parallel and sequential paths agree byte for byte") {
  std::string rows = "subject_id,time,code\n";
  gen::Rng rng(7701);
  for (int s = 0; s < 40; ++s) {
    for (int e = 0; e < 10; ++e) {
      rows += "s" + std::to_string(s) + "," + std::to_string(gen::pick(rng, 1, 15)) +
              "," + (gen::pick(rng, 0, 1) ? "p" : "q") + "\n";
    }
  }
  TempCsv f(rows);
  auto cohort = ingest_csv(f.path);
  Alphabet sigma({"p", "q"}, AtomMode::Props);
  auto phi = parse_formula("<> (p & <3> q)", sigma);
  EvalConfig cfg;
  cfg.quant_bound = 20;
  cfg.assume_complete = true;

  QueryReport par = run_query(phi, cohort, cfg, PositionsMode::All, true);
  QueryReport seq = run_query(phi, cohort, cfg, PositionsMode::All, false);
  CHECK(report_to_json(par).dump() == report_to_json(seq).dump());
  CHECK(report_to_tsv(par) == report_to_tsv(seq));

  // repeat runs are identical
  QueryReport again = run_query(phi, cohort, cfg, PositionsMode::All, true);
  CHECK(report_to_json(par).dump() == report_to_json(again).dump());
}

TEST_CASE("report json schema") {
  TempCsv f("subject_id,time,code\ns1,1,p\n");
  auto cohort = ingest_csv(f.path);
  Alphabet sigma({"p"}, AtomMode::Props);
  EvalConfig cfg;
  cfg.quant_bound = 4;
  cfg.assume_complete = true;
  QueryReport r = run_query(parse_formula("p", sigma), cohort, cfg);
  auto j = report_to_json(r);
  REQUIRE(j.contains("subjects"));
  REQUIRE(j.contains("summary"));
  REQUIRE(j.contains("config"));
  CHECK(j["subjects"][0]["id"] == "s1");
  CHECK(j["subjects"][0]["truth"] == "true");
  CHECK(j["summary"]["true"] == 1);
  CHECK(j["config"]["bound"] == 4);
  CHECK(j["config"]["assume_complete"] == true);
}
