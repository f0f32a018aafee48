#include "tel/cohort.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace tel {

namespace {

struct CivilDate {
  int y;
  int m;
  int d;
};

/* Days since 1970-01-01, valid across the proleptic Gregorian calendar. */
long long days_from_civil(CivilDate c) {
  int y = c.y - (c.m <= 2);
  long long era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = static_cast<unsigned>((153 * (c.m + (c.m > 2 ? -3 : 9)) + 2) / 5 + c.d - 1);
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

bool parse_iso_date(const std::string& s, CivilDate& out) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3) return false;
  if (m < 1 || m > 12 || d < 1 || d > 31) return false;
  out = {y, m, d};
  return true;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

struct RawRow {
  std::string subject;
  std::string time;
  std::string code;
  std::size_t line;
};

long long bin_index(CivilDate date, CivilDate origin, BinUnit bin) {
  if (bin == BinUnit::Month) {
    return 12LL * (date.y - origin.y) + (date.m - origin.m) + 1;
  }
  long long diff = days_from_civil(date) - days_from_civil(origin);
  if (bin == BinUnit::Week) {
    if (diff < 0) return diff / 7;  // still non-positive, reported as such
    return diff / 7 + 1;
  }
  return diff + 1;
}

}  // namespace

std::map<std::string, FiniteTrace> ingest_csv(const std::string& path, BinUnit bin,
                                              const std::string& origin) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::EmptyFile, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::EmptyFile, "'" + path + "' is empty");
  std::vector<std::string> header = split_csv(line);
  if (header != std::vector<std::string>{"subject_id", "time", "code"}) {
    throw Error(ErrorKind::MalformedRow, "line 1: expected header subject_id,time,code");
  }
  std::vector<RawRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw Error(ErrorKind::MalformedRow,
                  "line " + std::to_string(lineno) + ": expected subject_id,time,code");
    }
    rows.push_back({fields[0], fields[1], fields[2], lineno});
  }
  if (rows.empty()) throw Error(ErrorKind::EmptyFile, "'" + path + "' has no data rows");

  /* resolve each row to a positive position */
  std::vector<long long> position(rows.size());
  if (bin == BinUnit::None) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t used = 0;
      long long t = 0;
      try {
        t = std::stoll(rows[i].time, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != rows[i].time.size()) {
        throw Error(ErrorKind::MalformedRow,
                    "line " + std::to_string(rows[i].line) + ": time is not an integer");
      }
      if (t < 1) {
        throw Error(ErrorKind::NonPositiveTime,
                    "line " + std::to_string(rows[i].line) + ": time must be >= 1");
      }
      position[i] = t;
    }
  } else {
    std::vector<CivilDate> dates(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!parse_iso_date(rows[i].time, dates[i])) {
        throw Error(ErrorKind::MalformedRow,
                    "line " + std::to_string(rows[i].line) + ": time is not an ISO date");
      }
    }
    CivilDate org{};
    if (!origin.empty()) {
      if (!parse_iso_date(origin, org)) {
        throw Error(ErrorKind::InvalidArgument, "origin is not an ISO date");
      }
    } else {
      org = dates[0];
      for (const auto& d : dates) {
        if (days_from_civil(d) < days_from_civil(org)) org = d;
      }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      position[i] = bin_index(dates[i], org, bin);
      if (position[i] < 1) {
        throw Error(ErrorKind::NonPositiveTime,
                    "line " + std::to_string(rows[i].line) + ": date precedes the origin");
      }
    }
  }

  std::set<std::string> codes;
  for (const auto& r : rows) codes.insert(r.code);
  Alphabet sigma(std::vector<std::string>(codes.begin(), codes.end()), AtomMode::Props);

  std::map<std::string, std::map<long long, Letter>> grouped;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    grouped[rows[i].subject][position[i]].insert(rows[i].code);
  }
  std::map<std::string, FiniteTrace> cohort;
  for (auto& [id, by_pos] : grouped) {
    long long last = by_pos.rbegin()->first;
    FiniteTrace trace;
    trace.alphabet = sigma;
    trace.positions.assign(static_cast<std::size_t>(last), Letter{});
    for (auto& [pos, letter] : by_pos) {
      trace.positions[static_cast<std::size_t>(pos - 1)] = std::move(letter);
    }
    cohort.emplace(id, std::move(trace));
  }
  return cohort;
}

std::string cohort_to_csv(const std::map<std::string, FiniteTrace>& cohort) {
  std::string out = "subject_id,time,code\n";
  for (const auto& [id, trace] : cohort) {
    for (std::size_t i = 0; i < trace.positions.size(); ++i) {
      for (const auto& code : trace.positions[i]) {
        out += id + "," + std::to_string(i + 1) + "," + code + "\n";
      }
    }
  }
  return out;
}

namespace {

SubjectResult evaluate_subject(const std::string& id, const FiniteTrace& trace,
                               const FormulaPtr& f, const EvalConfig& cfg,
                               PositionsMode mode) {
  LassoWord w = from_finite(trace);
  Evaluator ev(w, cfg);
  SubjectResult res;
  res.id = id;
  res.truth = Truth3::Unknown;
  long long last = static_cast<long long>(trace.positions.size());
  for (long long pos = 1; pos <= last; ++pos) {
    Truth3 t = ev.eval(pos, f);
    if (pos == 1) res.truth = t;
    if (t == Truth3::True) {
      res.positions.push_back(pos);
      if (!res.witness) res.witness = pos;
      if (mode == PositionsMode::FirstOnly) break;
    }
  }
  return res;
}

}  // namespace

QueryReport run_query(const FormulaPtr& f, const std::map<std::string, FiniteTrace>& cohort,
                      const EvalConfig& cfg, PositionsMode mode, bool parallel) {
  if (!is_closed(f)) {
    throw Error(ErrorKind::OpenFormula, "query formula must be closed");
  }
  std::vector<std::pair<const std::string*, const FiniteTrace*>> items;
  items.reserve(cohort.size());
  for (const auto& [id, trace] : cohort) items.emplace_back(&id, &trace);

  std::vector<SubjectResult> results(items.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t k = begin; k < items.size(); k += step) {
      results[k] = evaluate_subject(*items[k].first, *items[k].second, f, cfg, mode);
    }
  };
  unsigned nthreads = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1;
  if (nthreads > 1 && items.size() > 1) {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t, nthreads);
    for (auto& th : pool) th.join();
  } else {
    work(0, 1);
  }

  QueryReport report;
  report.bound = cfg.quant_bound;
  report.assume_complete = cfg.assume_complete;
  for (auto& r : results) {
    switch (r.truth) {
      case Truth3::True: ++report.true_count; break;
      case Truth3::False: ++report.false_count; break;
      case Truth3::Unknown: ++report.unknown_count; break;
    }
    report.subjects.push_back(std::move(r));
  }
  return report;
}

nlohmann::json report_to_json(const QueryReport& r) {
  nlohmann::json subjects = nlohmann::json::array();
  for (const auto& s : r.subjects) {
    nlohmann::json j{{"id", s.id}, {"truth", t3_name(s.truth)}, {"positions", s.positions}};
    if (s.witness) j["witness"] = *s.witness;
    subjects.push_back(std::move(j));
  }
  return nlohmann::json{
      {"subjects", subjects},
      {"summary", {{"true", r.true_count}, {"false", r.false_count}, {"unknown", r.unknown_count}}},
      {"config", {{"bound", r.bound}, {"assume_complete", r.assume_complete}}}};
}

std::string report_to_tsv(const QueryReport& r) {
  std::string out = "subject_id\ttruth\tpositions\twitness\n";
  for (const auto& s : r.subjects) {
    out += s.id;
    out += '\t';
    out += t3_name(s.truth);
    out += '\t';
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s.positions[i]);
    }
    out += '\t';
    if (s.witness) out += std::to_string(*s.witness);
    out += '\n';
  }
  return out;
}

}  // namespace tel
