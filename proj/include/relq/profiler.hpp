#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "relq/rational.hpp"
#include "relq/table_store.hpp"

namespace relq {

/// Distinct-count / uniqueness facts for one column.
struct ColumnProfile {
  std::string table;
  std::string column;
  std::size_t row_count = 0;
  std::size_t null_count = 0;
  std::size_t cardinality = 0;             // distinct non-null values
  std::optional<Rational> selectivity;     // cardinality / row_count; absent when empty
};

/// Directional row hit rate: the fraction of source rows whose value exists
/// among the target column's non-null values. NULL source rows never hit,
/// and the denominator is the full source row count.
struct HitProfile {
  ColumnId source;
  ColumnId target;
  std::size_t hit_count = 0;
  Rational row_hit_rate{0, 1};
};

namespace detail {

inline std::unordered_set<std::string> distinct_keys(const Column& column) {
  std::unordered_set<std::string> keys;
  keys.reserve(column.cells.size());
  for (const Cell& cell : column.cells) {
    if (!is_null(cell)) keys.insert(canonical_key(cell));
  }
  return keys;
}

}  // namespace detail

/// Number of distinct non-null values, with numeric comparison across
/// integer/decimal (7 == 7.0).
inline std::size_t cardinality(const TableStore& store, std::string_view table,
                               std::string_view column) {
  return detail::distinct_keys(store.require_column(table, column)).size();
}

inline ColumnProfile profile_column(const TableStore& store, std::string_view table,
                                    std::string_view column) {
  const Table* t = store.find_table(table);
  const Column& c = store.require_column(table, column);
  ColumnProfile profile;
  profile.table = std::string(table);
  profile.column = std::string(column);
  profile.row_count = t->row_count;
  profile.null_count = c.null_count;
  profile.cardinality = detail::distinct_keys(c).size();
  if (profile.row_count > 0) {
    profile.selectivity = Rational(static_cast<std::int64_t>(profile.cardinality),
                                   static_cast<std::int64_t>(profile.row_count));
  }
  return profile;
}

/// cardinality / row_count, kept as the exact integer pair.
inline Rational selectivity_rate(const TableStore& store, std::string_view table,
                                 std::string_view column) {
  ColumnProfile p = profile_column(store, table, column);
  if (!p.selectivity) throw EmptyTableError(std::string(table));
  return *p.selectivity;
}

inline HitProfile row_hit_rate(const TableStore& store, const ColumnId& source,
                               const ColumnId& target) {
  const Table* source_table = store.find_table(source.table);
  const Column& source_column = store.require_column(source.table, source.column);
  const Column& target_column = store.require_column(target.table, target.column);
  if (source_table->row_count == 0) throw EmptyTableError(source.table);

  // One pass to build the target's distinct set, one pass over the source.
  std::unordered_set<std::string> target_keys = detail::distinct_keys(target_column);
  std::size_t hits = 0;
  for (const Cell& cell : source_column.cells) {
    if (!is_null(cell) && target_keys.contains(canonical_key(cell))) ++hits;
  }

  HitProfile profile;
  profile.source = source;
  profile.target = target;
  profile.hit_count = hits;
  profile.row_hit_rate = Rational(static_cast<std::int64_t>(hits),
                                  static_cast<std::int64_t>(source_table->row_count));
  return profile;
}

// ---------------------------------------------------------------------------

enum class Classification { pending, pk_fk, ambiguous, unprofilable };

enum class ClassificationRule { none, selectivity_gap, row_hit_tiebreak };

inline const char* to_string(ClassificationRule rule) {
  switch (rule) {
    case ClassificationRule::none: return "none";
    case ClassificationRule::selectivity_gap: return "selectivity-gap";
    case ClassificationRule::row_hit_tiebreak: return "row-hit-tiebreak";
  }
  return "?";
}

/// One constraint with both ends' metrics and (after classification) the
/// assigned roles. `pk_end` indexes the constraint ends: 0 = left, 1 = right.
struct RelationshipCandidate {
  ValidatedConstraint constraint;
  ColumnProfile left_profile;
  ColumnProfile right_profile;
  HitProfile left_to_right;
  HitProfile right_to_left;

  Classification classification = Classification::pending;
  int pk_end = -1;
  ClassificationRule rule_used = ClassificationRule::none;
  Rational confidence{0, 1};
  std::vector<std::string> notes;
  std::string failure;  // unprofilable reason

  const ColumnProfile& profile(int end) const {
    return end == 0 ? left_profile : right_profile;
  }
  const ColumnId& end(int i) const {
    return i == 0 ? constraint.left : constraint.right;
  }
};

/// Fills both column profiles and both directional hit rates. A metric
/// failure (e.g. an empty table) yields an unprofilable candidate instead of
/// propagating: such constraints still get a report row.
inline RelationshipCandidate profile_constraint(const TableStore& store,
                                                const ValidatedConstraint& vc) {
  RelationshipCandidate candidate;
  candidate.constraint = vc;
  if (!vc.type_compatible) {
    candidate.notes.push_back(std::string("type-incompatible: ") +
                              to_string(vc.left_type) + "~" + to_string(vc.right_type) +
                              "; values compared by text form");
  }
  try {
    candidate.left_profile = profile_column(store, vc.left.table, vc.left.column);
    candidate.right_profile = profile_column(store, vc.right.table, vc.right.column);
    if (!candidate.left_profile.selectivity) throw EmptyTableError(vc.left.table);
    if (!candidate.right_profile.selectivity) throw EmptyTableError(vc.right.table);
    candidate.left_to_right = row_hit_rate(store, vc.left, vc.right);
    candidate.right_to_left = row_hit_rate(store, vc.right, vc.left);
  } catch (const Error& e) {
    candidate.classification = Classification::unprofilable;
    candidate.failure = e.what();
  }
  return candidate;
}

}  // namespace relq
