#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "relq/catalog.hpp"
#include "relq/extract.hpp"
#include "relq/parser.hpp"

namespace relq {

enum class ResolveFailureKind {
  unresolvable_qualifier,  // qualifier matches no table and no alias
  unresolvable_column,     // unqualified column matches no in-scope table
  ambiguous_column,        // unqualified column matches several tables
  untraceable_column,      // derived projection is an expression
  too_deep,
};

inline const char* to_string(ResolveFailureKind k) {
  switch (k) {
    case ResolveFailureKind::unresolvable_qualifier: return "unresolvable qualifier";
    case ResolveFailureKind::unresolvable_column: return "unresolvable column";
    case ResolveFailureKind::ambiguous_column: return "ambiguous column";
    case ResolveFailureKind::untraceable_column: return "untraceable column";
    case ResolveFailureKind::too_deep: return "resolution too deep";
  }
  return "?";
}

struct ResolveFailure {
  ColumnRef ref;
  ResolveFailureKind kind;
  std::string detail;

  std::string describe() const {
    std::string out = std::string(to_string(kind)) + " '" + ref.to_string() + "'";
    if (!detail.empty()) out += ": " + detail;
    return out;
  }
};

using RefResolution = std::variant<ColumnId, ResolveFailure>;

/// A raw constraint rewritten to base tables, ends in lexicographic order.
struct ResolvedConstraint {
  ColumnId left;
  ColumnId right;

  friend bool operator==(const ResolvedConstraint&, const ResolvedConstraint&) = default;
};

/// Both sides resolve to the very same column; carries no relationship
/// signal and is dropped (with a diagnostic) by the collector.
struct DegenerateConstraint {
  ColumnId ref;
};

using ConstraintResolution =
    std::variant<ResolvedConstraint, DegenerateConstraint, ResolveFailure>;

/// Rewrites alias-qualified column references to base tables by following
/// FROM bindings innermost-scope-first, tracing derived-table projections
/// (star projections pass columns through to the inner source). The catalog
/// is consulted for unqualified columns and for already-canonical names.
class Resolver {
 public:
  Resolver(const Extraction& extraction, const Catalog& catalog)
      : extraction_(extraction), catalog_(catalog) {}

  RefResolution resolve_ref(const ColumnRef& ref, int scope_id) const {
    int depth = 0;
    return resolve_ref(ref, scope_id, depth);
  }

  ConstraintResolution resolve(const RawConstraint& raw) const {
    RefResolution left = resolve_ref(raw.left, raw.scope_id);
    if (auto* fail = std::get_if<ResolveFailure>(&left)) return *fail;
    RefResolution right = resolve_ref(raw.right, raw.scope_id);
    if (auto* fail = std::get_if<ResolveFailure>(&right)) return *fail;

    ColumnId l = std::get<ColumnId>(left);
    ColumnId r = std::get<ColumnId>(right);
    if (l == r) return DegenerateConstraint{std::move(l)};
    if (r < l) std::swap(l, r);
    return ResolvedConstraint{std::move(l), std::move(r)};
  }

 private:
  static constexpr int kMaxDepth = 256;

  const Extraction& extraction_;
  const Catalog& catalog_;

  const Scope& scope(int id) const { return extraction_.scopes[id]; }

  RefResolution resolve_ref(const ColumnRef& ref, int scope_id, int& depth) const {
    if (++depth > kMaxDepth) {
      return ResolveFailure{ref, ResolveFailureKind::too_deep, {}};
    }
    if (ref.qualifier) {
      for (int sid = scope_id; sid >= 0; sid = scope(sid).parent) {
        for (const ScopeBinding& b : scope(sid).bindings) {
          if (b.name == *ref.qualifier) {
            return resolve_through(b, ref, depth);
          }
        }
      }
      // Not bound anywhere: accept names that are already canonical base
      // tables, so re-resolving a resolved constraint is a no-op.
      if (catalog_.has_table(*ref.qualifier)) {
        return ColumnId{*ref.qualifier, ref.column};
      }
      return ResolveFailure{ref, ResolveFailureKind::unresolvable_qualifier,
                            "no table or alias named '" + *ref.qualifier + "' in scope"};
    }

    // Unqualified: exactly one current-scope source must expose the column.
    std::vector<const ScopeBinding*> hits;
    for (const ScopeBinding& b : scope(scope_id).bindings) {
      if (may_contain(b, ref.column)) hits.push_back(&b);
    }
    if (hits.size() == 1) return resolve_through(*hits[0], ref, depth);
    if (hits.empty()) {
      return ResolveFailure{ref, ResolveFailureKind::unresolvable_column,
                            "no in-scope table has column '" + ref.column + "'"};
    }
    std::string names;
    for (const ScopeBinding* b : hits) {
      if (!names.empty()) names += ", ";
      names += b->name;
    }
    return ResolveFailure{ref, ResolveFailureKind::ambiguous_column,
                          "matches " + names};
  }

  RefResolution resolve_through(const ScopeBinding& binding, const ColumnRef& ref,
                                int& depth) const {
    if (!binding.is_derived) return ColumnId{binding.table, ref.column};
    return trace_projection(binding.derived_scope, ref, depth);
  }

  RefResolution trace_projection(int scope_id, const ColumnRef& ref, int& depth) const {
    if (++depth > kMaxDepth) {
      return ResolveFailure{ref, ResolveFailureKind::too_deep, {}};
    }
    const SqlAst& block = *scope(scope_id).block;

    for (const SelectItem& item : block.projections) {
      if (item.output_name() == ref.column) {
        if (item.kind == SelectItem::Kind::column) {
          return resolve_ref(item.column, scope_id, depth);
        }
        return ResolveFailure{ref, ResolveFailureKind::untraceable_column,
                              "derived projection '" + ref.column +
                                  "' is an expression, not a bare column"};
      }
    }

    // Star projections pass the column through to the FROM sources.
    std::vector<const ScopeBinding*> candidates;
    auto add = [&](const ScopeBinding* b) {
      if (std::find(candidates.begin(), candidates.end(), b) == candidates.end()) {
        candidates.push_back(b);
      }
    };
    for (const SelectItem& item : block.projections) {
      if (item.kind == SelectItem::Kind::star) {
        for (const ScopeBinding& b : scope(scope_id).bindings) add(&b);
      } else if (item.kind == SelectItem::Kind::qualified_star) {
        for (const ScopeBinding& b : scope(scope_id).bindings) {
          if (b.name == item.qualifier) add(&b);
        }
      }
    }
    if (candidates.empty()) {
      return ResolveFailure{ref, ResolveFailureKind::unresolvable_column,
                            "column '" + ref.column + "' is not projected by the derived table"};
    }
    if (candidates.size() == 1) {
      ColumnRef inner{std::nullopt, ref.column};
      return resolve_through(*candidates[0], inner, depth);
    }
    std::vector<const ScopeBinding*> hits;
    for (const ScopeBinding* b : candidates) {
      if (may_contain(*b, ref.column)) hits.push_back(b);
    }
    if (hits.size() == 1) {
      ColumnRef inner{std::nullopt, ref.column};
      return resolve_through(*hits[0], inner, depth);
    }
    if (hits.empty()) {
      return ResolveFailure{ref, ResolveFailureKind::unresolvable_column,
                            "column '" + ref.column + "' not found behind the star projection"};
    }
    return ResolveFailure{ref, ResolveFailureKind::ambiguous_column,
                          "star projection exposes '" + ref.column + "' from several sources"};
  }

  /// Whether a FROM source can expose `column`, by catalog schema for base
  /// tables and by projection shape for derived ones.
  bool may_contain(const ScopeBinding& binding, const std::string& column) const {
    if (!binding.is_derived) return catalog_.has_column(binding.table, column);
    const Scope& inner = scope(binding.derived_scope);
    for (const SelectItem& item : inner.block->projections) {
      if (item.output_name() == column) return true;
    }
    for (const SelectItem& item : inner.block->projections) {
      if (item.kind == SelectItem::Kind::star) {
        for (const ScopeBinding& b : inner.bindings) {
          if (may_contain(b, column)) return true;
        }
      } else if (item.kind == SelectItem::Kind::qualified_star) {
        for (const ScopeBinding& b : inner.bindings) {
          if (b.name == item.qualifier && may_contain(b, column)) return true;
        }
      }
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// Log-level collection.

/// A deduplicated resolved constraint with its evidence weight.
struct CanonicalConstraint {
  ColumnId left;
  ColumnId right;
  std::size_t occurrences = 0;            // number of statements citing it
  std::vector<std::size_t> statements;    // sorted statement indexes

  friend bool operator==(const CanonicalConstraint&, const CanonicalConstraint&) = default;
};

struct CollectResult {
  std::vector<CanonicalConstraint> constraints;  // sorted by (left, right)

  struct Unresolved {
    std::size_t statement;
    RawConstraint raw;
    std::string reason;
  };
  std::vector<Unresolved> unresolved;

  struct Degenerate {
    std::size_t statement;
    ColumnId ref;
  };
  std::vector<Degenerate> degenerate;

  struct ExtractionFailure {
    std::size_t statement;
    std::string message;
  };
  std::vector<ExtractionFailure> extraction_failures;

  std::size_t raw_count = 0;
  std::size_t resolved_count = 0;  // includes degenerate
};

/// Resolves and deduplicates the constraints of every successfully parsed
/// statement. Unresolvable constraints are reported, never dropped:
/// raw_count == resolved_count + |unresolved| for statements that extract.
inline CollectResult collect_canonical(const std::vector<StatementRecord>& records,
                                       const Catalog& catalog) {
  CollectResult out;
  std::map<std::pair<ColumnId, ColumnId>, std::vector<std::size_t>> buckets;

  for (const StatementRecord& rec : records) {
    if (!rec.ok()) continue;
    Extraction extraction;
    try {
      extraction = extract(*rec.ast);
    } catch (const DuplicateAliasError& e) {
      out.extraction_failures.push_back({rec.index, e.what()});
      continue;
    }
    Resolver resolver(extraction, catalog);
    std::set<std::pair<ColumnId, ColumnId>> seen_here;
    for (const RawConstraint& raw : extraction.constraints) {
      ++out.raw_count;
      ConstraintResolution resolution = resolver.resolve(raw);
      if (auto* fail = std::get_if<ResolveFailure>(&resolution)) {
        out.unresolved.push_back({rec.index, raw, fail->describe()});
        continue;
      }
      ++out.resolved_count;
      if (auto* degen = std::get_if<DegenerateConstraint>(&resolution)) {
        out.degenerate.push_back({rec.index, degen->ref});
        continue;
      }
      auto& resolved = std::get<ResolvedConstraint>(resolution);
      auto key = std::make_pair(resolved.left, resolved.right);
      if (seen_here.insert(key).second) {
        buckets[key].push_back(rec.index);
      }
    }
  }

  for (auto& [key, statements] : buckets) {
    CanonicalConstraint c;
    c.left = key.first;
    c.right = key.second;
    c.occurrences = statements.size();
    c.statements = std::move(statements);
    out.constraints.push_back(std::move(c));
  }
  return out;
}

}  // namespace relq
