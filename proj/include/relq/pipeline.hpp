#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relq/baseline.hpp"
#include "relq/classifier.hpp"
#include "relq/csv.hpp"
#include "relq/errors.hpp"
#include "relq/profiler.hpp"
#include "relq/resolve.hpp"
#include "relq/table_store.hpp"

namespace relq {

struct RunConfig {
  std::filesystem::path queries_path;
  std::filesystem::path data_dir;
  Thresholds thresholds;
  Rational min_containment{50, 100};
  int verbosity = 0;
};

// ---------------------------------------------------------------------------
// Report rows.

/// One line of the relationship report. Every canonical constraint produces
/// exactly one row; for non-PkFk rows the pk_/fk_ slots hold the
/// constraint's ends in normalized order.
struct ReportRow {
  std::string pk_table, pk_column;
  std::string fk_table, fk_column;
  std::string selectivity_pk, selectivity_fk;
  std::string rhr_pk_to_fk, rhr_fk_to_pk;
  std::string rule_used = "none";
  std::string confidence;
  std::size_t occurrences = 0;
  std::string status;
  std::string notes;
  std::string detail;
};

inline constexpr const char* kReportHeader =
    "pk_table,pk_column,fk_table,fk_column,selectivity_pk,selectivity_fk,"
    "rhr_pk_to_fk,rhr_fk_to_pk,rule_used,confidence,occurrences,status,notes,detail";

namespace detail {

inline std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const std::string& n : notes) {
    if (!out.empty()) out += "; ";
    out += n;
  }
  return out;
}

}  // namespace detail

/// Everything known about one canonical constraint after the pipeline ran.
struct ConstraintOutcome {
  CanonicalConstraint constraint;
  std::optional<ValidationRejection> rejection;
  std::optional<RelationshipCandidate> candidate;  // set when validated
};

inline ReportRow build_report_row(const ConstraintOutcome& outcome) {
  ReportRow row;
  row.occurrences = outcome.constraint.occurrences;

  auto fill_ends = [&](const ColumnId& pk, const ColumnId& fk) {
    row.pk_table = pk.table;
    row.pk_column = pk.column;
    row.fk_table = fk.table;
    row.fk_column = fk.column;
  };

  if (outcome.rejection) {
    fill_ends(outcome.constraint.left, outcome.constraint.right);
    row.status = "rejected:" + outcome.rejection->status_suffix();
    row.notes = outcome.rejection->detail;
    return row;
  }

  const RelationshipCandidate& candidate = *outcome.candidate;
  if (candidate.classification == Classification::unprofilable) {
    fill_ends(outcome.constraint.left, outcome.constraint.right);
    row.status = "unprofilable";
    std::vector<std::string> notes = candidate.notes;
    notes.push_back(candidate.failure);
    row.notes = detail::join_notes(notes);
    return row;
  }

  int pk = candidate.classification == Classification::pk_fk ? candidate.pk_end : 0;
  int fk = 1 - pk;
  fill_ends(candidate.end(pk), candidate.end(fk));

  const ColumnProfile& pk_profile = candidate.profile(pk);
  const ColumnProfile& fk_profile = candidate.profile(fk);
  const HitProfile& pk_to_fk = pk == 0 ? candidate.left_to_right : candidate.right_to_left;
  const HitProfile& fk_to_pk = pk == 0 ? candidate.right_to_left : candidate.left_to_right;

  row.selectivity_pk = pk_profile.selectivity->fixed4();
  row.selectivity_fk = fk_profile.selectivity->fixed4();
  row.rhr_pk_to_fk = pk_to_fk.row_hit_rate.fixed4();
  row.rhr_fk_to_pk = fk_to_pk.row_hit_rate.fixed4();
  row.rule_used = to_string(candidate.rule_used);
  row.confidence = candidate.confidence.fixed4();
  row.status = candidate.classification == Classification::pk_fk ? "ok" : "ambiguous";
  row.notes = detail::join_notes(candidate.notes);
  row.detail = "sel_pk=" + pk_profile.selectivity->fraction() +
               ";sel_fk=" + fk_profile.selectivity->fraction() +
               ";rhr_pk_to_fk=" + pk_to_fk.row_hit_rate.fraction() +
               ";rhr_fk_to_pk=" + fk_to_pk.row_hit_rate.fraction();
  return row;
}

inline void sort_report_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.pk_table, a.pk_column, a.fk_table, a.fk_column) <
           std::tie(b.pk_table, b.pk_column, b.fk_table, b.fk_column);
  });
}

inline void write_report(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kReportHeader << "\n";
  for (const ReportRow& row : rows) {
    out << csv_field(row.pk_table) << ',' << csv_field(row.pk_column) << ','
        << csv_field(row.fk_table) << ',' << csv_field(row.fk_column) << ','
        << row.selectivity_pk << ',' << row.selectivity_fk << ','
        << row.rhr_pk_to_fk << ',' << row.rhr_fk_to_pk << ','
        << row.rule_used << ',' << row.confidence << ','
        << row.occurrences << ',' << csv_field(row.status) << ','
        << csv_field(row.notes) << ',' << csv_field(row.detail) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Discover.

struct DiscoverResult {
  std::size_t statements_total = 0;   // non-empty statements in the log
  std::size_t statements_parsed = 0;  // successfully parsed
  CollectResult collected;
  std::vector<ConstraintOutcome> outcomes;
  std::vector<ReportRow> rows;
  std::size_t pairs_examined = 0;     // validated constraints (guided cost)
  double wall_time_ms = 0;            // collect + validate + profile + classify

  bool ok() const { return statements_parsed > 0; }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

inline void report_statement_diagnostics(std::ostream& diag,
                                         const std::vector<StatementRecord>& records) {
  for (const StatementRecord& rec : records) {
    if (rec.ok()) continue;
    const char* what = rec.status == StatementRecord::Status::unsupported
                           ? "skipped"
                           : "failed";
    diag << "statement " << rec.index << " (line " << rec.line << ") " << what
         << ": " << rec.message << "\n";
  }
}

inline void report_collect_diagnostics(std::ostream& diag, const CollectResult& collected) {
  for (const auto& failure : collected.extraction_failures) {
    diag << "statement " << failure.statement << " skipped: " << failure.message << "\n";
  }
  for (const auto& unresolved : collected.unresolved) {
    diag << "statement " << unresolved.statement << ": unresolved constraint "
         << unresolved.raw.to_string() << " (" << unresolved.reason << ")\n";
  }
  for (const auto& degenerate : collected.degenerate) {
    diag << "statement " << degenerate.statement << ": degenerate constraint on "
         << degenerate.ref.to_string() << " dropped\n";
  }
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Resolve, validate, profile, classify a set of parsed statements against
/// a loaded store. Shared by discover and bench.
inline DiscoverResult analyze(const std::vector<StatementRecord>& records,
                              const TableStore& store, const Thresholds& thresholds) {
  DiscoverResult result;
  result.statements_total = records.size();
  for (const StatementRecord& rec : records) {
    if (rec.ok()) ++result.statements_parsed;
  }

  Catalog catalog = store.catalog();
  Stopwatch watch;
  result.collected = collect_canonical(records, catalog);

  for (const CanonicalConstraint& constraint : result.collected.constraints) {
    ConstraintOutcome outcome;
    outcome.constraint = constraint;
    ValidationResult validation = validate(constraint.left, constraint.right, catalog);
    if (auto* rejection = std::get_if<ValidationRejection>(&validation)) {
      outcome.rejection = *rejection;
    } else {
      ++result.pairs_examined;
      RelationshipCandidate candidate =
          profile_constraint(store, std::get<ValidatedConstraint>(validation));
      outcome.candidate = classify(std::move(candidate), thresholds);
    }
    result.outcomes.push_back(std::move(outcome));
  }
  result.wall_time_ms = watch.elapsed_ms();

  for (const ConstraintOutcome& outcome : result.outcomes) {
    result.rows.push_back(build_report_row(outcome));
  }
  sort_report_rows(result.rows);
  return result;
}

}  // namespace detail

/// Full guided run: parse the query log, resolve/validate constraints,
/// profile and classify them, write the CSV report. Diagnostics (parse
/// failures, unresolved constraints) go to `diag`.
inline DiscoverResult run_discover(const RunConfig& config, std::ostream& report,
                                   std::ostream& diag) {
  std::string log_text = detail::read_file(config.queries_path);
  std::vector<StatementRecord> records = parse_log(log_text);
  TableStore store = load_dir(config.data_dir);

  DiscoverResult result = detail::analyze(records, store, config.thresholds);
  detail::report_statement_diagnostics(diag, records);
  detail::report_collect_diagnostics(diag, result.collected);
  if (config.verbosity > 0) {
    diag << "parsed " << result.statements_parsed << "/" << result.statements_total
         << " statements, " << result.collected.constraints.size()
         << " canonical constraints\n";
  }
  write_report(report, result.rows);
  return result;
}

// ---------------------------------------------------------------------------
// Baseline + bench.

inline constexpr const char* kBaselineHeader =
    "table_a,column_a,table_b,column_b,overlap_count,containment_a,containment_b";

inline void write_baseline(std::ostream& out, const BaselineResult& result) {
  out << kBaselineHeader << "\n";
  for (const OverlapPair& pair : result.pairs) {
    out << csv_field(pair.a.table) << ',' << csv_field(pair.a.column) << ','
        << csv_field(pair.b.table) << ',' << csv_field(pair.b.column) << ','
        << pair.overlap_count << ',' << pair.containment_a.fixed4() << ','
        << pair.containment_b.fixed4() << "\n";
  }
}

inline BaselineResult run_baseline(const RunConfig& config, std::ostream& out,
                                   std::ostream& diag) {
  TableStore store = load_dir(config.data_dir);
  BaselineResult result = discover_all(store, config.min_containment);
  write_baseline(out, result);
  if (config.verbosity > 0) {
    diag << "examined " << result.pairs_examined << " column pairs, "
         << result.pairs.size() << " above containment "
         << config.min_containment.fixed4() << "\n";
  }
  return result;
}

struct BenchRow {
  std::string run_label;
  std::size_t query_count = 0;
  std::size_t pairs_examined = 0;
  double wall_time_ms = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  Comparison comparison;
};

inline constexpr const char* kBenchHeader =
    "run_label,query_count,pairs_examined,wall_time_ms";

namespace detail {

inline std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace detail

/// Runs guided discovery over growing query-log prefixes (0..N statements)
/// and the exhaustive baseline once, and emits one cost row per run.
inline BenchResult run_bench(const RunConfig& config, std::ostream& out,
                             std::ostream& diag) {
  std::string log_text = detail::read_file(config.queries_path);
  std::vector<StatementRecord> records = parse_log(log_text);
  TableStore store = load_dir(config.data_dir);

  BenchResult bench;
  std::vector<ValidatedConstraint> guided_constraints;
  double guided_full_ms = 0;

  for (std::size_t prefix = 0; prefix <= records.size(); ++prefix) {
    std::vector<StatementRecord> slice(records.begin(), records.begin() + prefix);
    DiscoverResult result = detail::analyze(slice, store, config.thresholds);
    bench.rows.push_back(
        {"guided", prefix, result.pairs_examined, result.wall_time_ms});
    if (prefix == records.size()) {
      guided_full_ms = result.wall_time_ms;
      for (const ConstraintOutcome& outcome : result.outcomes) {
        if (outcome.candidate) {
          guided_constraints.push_back(outcome.candidate->constraint);
        }
      }
    }
  }

  detail::Stopwatch watch;
  BaselineResult baseline = discover_all(store, config.min_containment);
  double baseline_ms = watch.elapsed_ms();
  bench.rows.push_back({"baseline", 0, baseline.pairs_examined, baseline_ms});

  bench.comparison = compare(guided_constraints, guided_full_ms, baseline, baseline_ms);

  out << kBenchHeader << "\n";
  for (const BenchRow& row : bench.rows) {
    out << row.run_label << ',' << row.query_count << ',' << row.pairs_examined
        << ',' << detail::format_ms(row.wall_time_ms) << "\n";
  }
  if (config.verbosity > 0) {
    diag << "guided examined " << bench.comparison.pairs_examined_guided
         << " pairs vs baseline " << bench.comparison.pairs_examined_baseline
         << "; " << bench.comparison.baseline_only.size()
         << " baseline-only candidates\n";
  }
  return bench;
}

// ---------------------------------------------------------------------------
// Single-column profile (CLI `profile` subcommand).

inline ColumnProfile run_profile(const RunConfig& config, const std::string& table,
                                 const std::string& column, std::ostream& out) {
  TableStore store = load_dir(config.data_dir);
  ColumnProfile profile = profile_column(store, table, column);
  out << profile.table << "." << profile.column << ": rows=" << profile.row_count
      << " nulls=" << profile.null_count << " cardinality=" << profile.cardinality;
  if (profile.selectivity) {
    out << " selectivity=" << profile.selectivity->fixed4() << " ("
        << profile.selectivity->fraction() << ")";
  } else {
    out << " selectivity=n/a (empty table)";
  }
  out << "\n";
  return profile;
}

// ---------------------------------------------------------------------------
// Flat key=value config files (RELQ_THRESHOLDS or --config).

/// Parses "key=value" lines; '#' starts a comment. Keys mirror the CLI flag
/// names. Unknown keys are a ConfigError.
inline std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path) {
  static const char* known[] = {"delta-sel", "eps-rhr", "tau-pk", "rho-count",
                                "min-containment"};
  std::string text = detail::read_file(path);
  std::map<std::string, std::string> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    bool ok = false;
    for (const char* k : known) {
      if (key == k) ok = true;
    }
    if (!ok) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

/// Parses a threshold value; must be a plain decimal in [0, 1].
inline Rational parse_threshold(const std::string& name, const std::string& text) {
  try {
    Rational r = Rational::from_decimal(text);
    if (r > Rational(1, 1)) {
      throw ConfigError(name + " must be in [0, 1], got " + text);
    }
    return r;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(name + ": " + e.what());
  }
}

}  // namespace relq
