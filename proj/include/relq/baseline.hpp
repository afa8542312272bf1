#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "relq/profiler.hpp"
#include "relq/rational.hpp"
#include "relq/table_store.hpp"

namespace relq {

/// One cross-table column pair from exhaustive value-overlap discovery.
struct OverlapPair {
  ColumnId a;
  ColumnId b;  // (a, b) in lexicographic order
  std::size_t overlap_count = 0;       // distinct shared non-null values
  Rational containment_a{0, 1};        // overlap / cardinality(a)
  Rational containment_b{0, 1};

  Rational max_containment() const {
    return containment_a > containment_b ? containment_a : containment_b;
  }
};

struct BaselineResult {
  std::vector<OverlapPair> pairs;      // above threshold, best first
  std::size_t pairs_examined = 0;      // full cross-table pair count
};

/// Exhaustive discovery over every cross-table column pair, the
/// cross-join-style strategy used for the cost comparison. Only pairs of
/// comparable inferred types are value-matched; incomparable pairs still
/// count toward pairs_examined.
inline BaselineResult discover_all(const TableStore& store, const Rational& min_containment) {
  BaselineResult result;

  struct Entry {
    const std::string* table;
    const Column* column;
    std::unordered_set<std::string> keys;
  };
  std::vector<Entry> entries;
  std::vector<std::pair<std::size_t, std::size_t>> table_span;  // [begin, end) per table
  for (const auto& [name, table] : store.tables) {
    std::size_t begin = entries.size();
    for (const Column& column : table.columns) {
      entries.push_back({&name, &column, detail::distinct_keys(column)});
    }
    table_span.emplace_back(begin, entries.size());
  }

  for (std::size_t ti = 0; ti < table_span.size(); ++ti) {
    for (std::size_t tj = ti + 1; tj < table_span.size(); ++tj) {
      for (std::size_t i = table_span[ti].first; i < table_span[ti].second; ++i) {
        for (std::size_t j = table_span[tj].first; j < table_span[tj].second; ++j) {
          ++result.pairs_examined;
          const Entry& ea = entries[i];
          const Entry& eb = entries[j];
          if (!types_comparable(ea.column->type, eb.column->type)) continue;

          const auto& small = ea.keys.size() <= eb.keys.size() ? ea.keys : eb.keys;
          const auto& large = ea.keys.size() <= eb.keys.size() ? eb.keys : ea.keys;
          std::size_t overlap = 0;
          for (const std::string& key : small) {
            if (large.contains(key)) ++overlap;
          }

          OverlapPair pair;
          pair.a = ColumnId{*ea.table, ea.column->name};
          pair.b = ColumnId{*eb.table, eb.column->name};
          if (pair.b < pair.a) {
            std::swap(pair.a, pair.b);
            pair.containment_a = eb.keys.empty() ? Rational(0, 1)
                : Rational(static_cast<std::int64_t>(overlap),
                           static_cast<std::int64_t>(eb.keys.size()));
            pair.containment_b = ea.keys.empty() ? Rational(0, 1)
                : Rational(static_cast<std::int64_t>(overlap),
                           static_cast<std::int64_t>(ea.keys.size()));
          } else {
            pair.containment_a = ea.keys.empty() ? Rational(0, 1)
                : Rational(static_cast<std::int64_t>(overlap),
                           static_cast<std::int64_t>(ea.keys.size()));
            pair.containment_b = eb.keys.empty() ? Rational(0, 1)
                : Rational(static_cast<std::int64_t>(overlap),
                           static_cast<std::int64_t>(eb.keys.size()));
          }
          pair.overlap_count = overlap;
          if (pair.max_containment() >= min_containment) {
            result.pairs.push_back(std::move(pair));
          }
        }
      }
    }
  }

  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const OverlapPair& x, const OverlapPair& y) {
              Rational mx = x.max_containment();
              Rational my = y.max_containment();
              if (mx != my) return my < mx;  // best first
              if (x.a != y.a) return x.a < y.a;
              return x.b < y.b;
            });
  return result;
}

/// Guided-vs-baseline comparison record for the bench output.
struct Comparison {
  std::size_t pairs_examined_guided = 0;    // distinct validated constraints
  std::size_t pairs_examined_baseline = 0;
  double wall_time_guided_ms = 0;
  double wall_time_baseline_ms = 0;
  std::vector<OverlapPair> baseline_only;   // candidates with no query evidence
};

inline Comparison compare(const std::vector<ValidatedConstraint>& guided,
                          double wall_time_guided_ms, const BaselineResult& baseline,
                          double wall_time_baseline_ms) {
  Comparison cmp;
  cmp.pairs_examined_guided = guided.size();
  cmp.pairs_examined_baseline = baseline.pairs_examined;
  cmp.wall_time_guided_ms = wall_time_guided_ms;
  cmp.wall_time_baseline_ms = wall_time_baseline_ms;

  std::set<std::pair<ColumnId, ColumnId>> guided_keys;
  for (const ValidatedConstraint& vc : guided) {
    guided_keys.emplace(vc.left, vc.right);
  }
  for (const OverlapPair& pair : baseline.pairs) {
    if (!guided_keys.contains(std::make_pair(pair.a, pair.b))) {
      cmp.baseline_only.push_back(pair);
    }
  }
  return cmp;
}

}  // namespace relq
