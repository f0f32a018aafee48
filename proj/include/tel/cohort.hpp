#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tel/eval.hpp"
#include "tel/words.hpp"

namespace tel {

enum class BinUnit { None, Day, Week, Month };

/* Reads `subject_id,time,code` rows into one props-mode trace per subject,
 * all sharing the alphabet of every code in the file. With BinUnit::None the
 * time column is a positive integer index; otherwise it is an ISO date
 * (YYYY-MM-DD) binned into half-open calendar intervals aligned to `origin`
 * (the earliest date in the file when origin is empty). Positions with no
 * events hold the empty set: codes are absent after the record ends. */
std::map<std::string, FiniteTrace> ingest_csv(const std::string& path,
                                              BinUnit bin = BinUnit::None,
                                              const std::string& origin = "");

/* Inverse of ingest_csv for already-binned data: one row per code occurrence,
 * integer times, subjects and positions in order. */
std::string cohort_to_csv(const std::map<std::string, FiniteTrace>& cohort);

enum class PositionsMode { All, FirstOnly };

struct SubjectResult {
  std::string id;
  Truth3 truth;                       // verdict at position 1
  std::vector<long long> positions;   // positions that evaluated True
  std::optional<long long> witness;   // first such position
};

struct QueryReport {
  std::vector<SubjectResult> subjects;  // sorted by id
  long long true_count = 0;             // buckets over position-1 verdicts
  long long false_count = 0;
  long long unknown_count = 0;
  long long bound = 0;
  bool assume_complete = false;
};

/* Evaluates a closed formula on every subject's trace (embedded as a lasso
 * with an all-empty loop). All scans every position; FirstOnly stops at the
 * first True. Subjects are independent; the parallel path must produce the
 * identical report. */
QueryReport run_query(const FormulaPtr& f,
                      const std::map<std::string, FiniteTrace>& cohort,
                      const EvalConfig& cfg,
                      PositionsMode mode = PositionsMode::All,
                      bool parallel = true);

nlohmann::json report_to_json(const QueryReport& r);
std::string report_to_tsv(const QueryReport& r);

}  // namespace tel
