#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tel/cohort.hpp"
#include "tel/encode.hpp"
#include "tel/eval.hpp"
#include "tel/rewrite.hpp"
#include "tel/syntax.hpp"
#include "tel/translate.hpp"
#include "tel/words.hpp"

namespace {

constexpr int kExitDefinite = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

tel::Alphabet alphabet_from_list(const std::string& csv, tel::AtomMode mode) {
  std::vector<std::string> symbols;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) symbols.push_back(item);
  }
  return tel::Alphabet(symbols, mode);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tel::Error(tel::ErrorKind::EmptyFile, "cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

std::vector<int> parse_indices(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Temporal ensemble logic toolkit"};
  app.require_subcommand(1);

  std::string formula_text, word_text, data_path, origin, from_lang = "ltl";
  std::string mode_name = "letters", bin_name = "none", format = "json";
  std::string alphabet_csv, json_path, indices_csv = "1";
  long long bound = 0;
  bool assume_complete = false, first_only = false, show_trace = false;

  auto* check = app.add_subcommand("check", "Evaluate a formula on a lasso word");
  check->add_option("--formula", formula_text)->required();
  check->add_option("--word", word_text)->required();
  check->add_option("--bound", bound);
  check->add_flag("--assume-complete", assume_complete);
  check->add_option("--mode", mode_name)->check(CLI::IsMember({"letters", "props"}));

  auto* query = app.add_subcommand("query", "Run a cohort query over event timelines");
  query->add_option("--formula", formula_text)->required();
  query->add_option("--data", data_path)->required();
  query->add_option("--bin", bin_name)->check(CLI::IsMember({"none", "day", "week", "month"}));
  query->add_option("--origin", origin);
  query->add_option("--bound", bound);
  query->add_flag("--assume-complete", assume_complete);
  query->add_flag("--first-only", first_only);
  query->add_option("--format", format)->check(CLI::IsMember({"json", "tsv"}));

  auto* translate = app.add_subcommand("translate", "Translate an LTL or TCL formula");
  translate->add_option("--from", from_lang)->required()->check(CLI::IsMember({"ltl", "tcl"}));
  translate->add_option("--formula", formula_text)->required();
  translate->add_option("--alphabet", alphabet_csv)->required();

  auto* simplify = app.add_subcommand("simplify", "Apply the local simplification rules");
  simplify->add_option("--formula", formula_text)->required();
  simplify->add_option("--alphabet", alphabet_csv)->required();
  simplify->add_option("--mode", mode_name)->check(CLI::IsMember({"letters", "props"}));
  simplify->add_flag("--trace", show_trace);

  auto* encb = app.add_subcommand("encode-buchi", "Encode automaton runs and acceptance");
  encb->add_option("file", json_path)->required();

  auto* encp = app.add_subcommand("encode-pcp", "Encode a PCP instance");
  encp->add_option("file", json_path)->required();

  auto* wit = app.add_subcommand("pcp-witness", "Build a PCP witness word");
  wit->add_option("file", json_path)->required();
  wit->add_option("--indices", indices_csv)->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) {
    tel::AtomMode mode = mode_name == "props" ? tel::AtomMode::Props : tel::AtomMode::Letters;
    tel::LassoWord w = tel::parse_word(word_text, mode);
    tel::FormulaPtr f = tel::parse_formula(formula_text, w.alphabet());
    tel::EvalConfig cfg = tel::default_config(w);
    cfg.assume_complete = assume_complete;
    if (bound > 0) cfg.quant_bound = bound;
    tel::Truth3 verdict = tel::language_member(w, f, cfg);
    std::cout << tel::t3_name(verdict) << "\n";
    return verdict == tel::Truth3::Unknown ? kExitUnknown : kExitDefinite;
  }

  if (query->parsed()) {
    tel::BinUnit bin = tel::BinUnit::None;
    if (bin_name == "day") bin = tel::BinUnit::Day;
    if (bin_name == "week") bin = tel::BinUnit::Week;
    if (bin_name == "month") bin = tel::BinUnit::Month;
    auto cohort = tel::ingest_csv(data_path, bin, origin);
    std::set<std::string> codes;
    for (const auto& [id, trace] : cohort) {
      (void)id;
      codes.insert(trace.alphabet.symbols().begin(), trace.alphabet.symbols().end());
    }
    tel::Alphabet sigma(std::vector<std::string>(codes.begin(), codes.end()),
                        tel::AtomMode::Props);
    tel::FormulaPtr f = tel::parse_formula(formula_text, sigma);
    tel::EvalConfig cfg;
    cfg.assume_complete = assume_complete;
    if (bound > 0) cfg.quant_bound = bound;
    tel::QueryReport report = tel::run_query(
        f, cohort, cfg, first_only ? tel::PositionsMode::FirstOnly : tel::PositionsMode::All);
    if (format == "tsv") {
      std::cout << tel::report_to_tsv(report);
    } else {
      std::cout << tel::report_to_json(report).dump(2) << "\n";
    }
    return report.unknown_count > 0 ? kExitUnknown : kExitDefinite;
  }

  if (translate->parsed()) {
    if (from_lang == "ltl") {
      tel::Alphabet sigma = alphabet_from_list(alphabet_csv, tel::AtomMode::Letters);
      std::cout << tel::print_formula(tel::ltl_to_tel(tel::parse_ltl(formula_text, sigma))) << "\n";
    } else {
      tel::Alphabet sigma = alphabet_from_list(alphabet_csv, tel::AtomMode::Props);
      std::cout << tel::print_formula(tel::tcl_to_tel(tel::parse_tcl(formula_text, sigma))) << "\n";
    }
    return kExitDefinite;
  }

  if (simplify->parsed()) {
    tel::AtomMode mode = mode_name == "props" ? tel::AtomMode::Props : tel::AtomMode::Letters;
    tel::Alphabet sigma = alphabet_from_list(alphabet_csv, mode);
    tel::FormulaPtr f = tel::parse_formula(formula_text, sigma);
    tel::RewriteTrace trace;
    tel::FormulaPtr out = tel::simplify(f, show_trace ? &trace : nullptr);
    if (show_trace) {
      nlohmann::json steps = nlohmann::json::array();
      for (const auto& step : trace) {
        steps.push_back({{"rule", step.rule},
                         {"path", step.path},
                         {"before", tel::print_formula(step.before)},
                         {"after", tel::print_formula(step.after)}});
      }
      std::cout << steps.dump(2) << "\n";
    }
    std::cout << tel::print_formula(out) << "\n";
    return kExitDefinite;
  }

  if (encb->parsed()) {
    tel::BuchiAutomaton a = tel::buchi_from_json(load_json(json_path));
    std::cout << tel::print_formula(
                     tel::and_(tel::encode_runs(a), tel::encode_acceptance(a)))
              << "\n";
    return kExitDefinite;
  }

  if (encp->parsed()) {
    tel::PCPInstance inst = tel::pcp_from_json(load_json(json_path));
    std::cout << tel::print_formula(tel::pcp_encode(inst)) << "\n";
    return kExitDefinite;
  }

  if (wit->parsed()) {
    tel::PCPInstance inst = tel::pcp_from_json(load_json(json_path));
    std::cout << tel::print_word(tel::pcp_witness(inst, parse_indices(indices_csv))) << "\n";
    return kExitDefinite;
  }

  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
