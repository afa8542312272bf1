#pragma once

#include <memory>
#include <string>
#include <vector>

#include "relq/ast.hpp"
#include "relq/errors.hpp"

namespace relq {

/// A temporary name introduced by a statement: a table alias, a derived-table
/// (subquery) alias, or a projection (column) alias.
struct AliasBinding {
  enum class Kind { table, derived, column };

  Kind kind = Kind::table;
  std::string name;
  std::string table;                    // kind == table: the base table bound
  std::shared_ptr<const SqlAst> query;  // kind == derived
  std::string expression;               // kind == column: rendered source item
  int scope_id = 0;

  std::string describe() const {
    switch (kind) {
      case Kind::table: return name + " -> " + table;
      case Kind::derived: return name + " -> (" + to_sql(*query) + ")";
      case Kind::column: return name + " -> " + expression;
    }
    return name;
  }
};

/// One `a.b = c.d` fact exactly as written, tagged with the SELECT block it
/// came from. Sides are stored in lexicographic order.
struct RawConstraint {
  ColumnRef left;
  ColumnRef right;
  int scope_id = 0;

  friend bool operator==(const RawConstraint&, const RawConstraint&) = default;

  std::string to_string() const {
    return left.to_string() + " = " + right.to_string();
  }
};

/// What a FROM entry binds inside its scope.
struct ScopeBinding {
  std::string name;
  bool is_derived = false;
  std::string table;       // base table, when !is_derived
  int derived_scope = -1;  // child scope id, when is_derived
  const TableRef* ref = nullptr;
};

/// One SELECT block. Scope 0 is the outermost query; derived tables get
/// child scopes.
struct Scope {
  int id = 0;
  int parent = -1;
  std::vector<ScopeBinding> bindings;
  const SqlAst* block = nullptr;
};

struct Extraction {
  std::vector<Scope> scopes;
  std::vector<RawConstraint> constraints;
  std::vector<AliasBinding> table_aliases;
  std::vector<AliasBinding> derived_aliases;
  std::vector<AliasBinding> column_aliases;
};

namespace detail {

inline void normalize_raw(RawConstraint& c) {
  auto key = [](const ColumnRef& r) {
    return (r.qualifier ? *r.qualifier : std::string()) + "." + r.column;
  };
  if (key(c.right) < key(c.left)) std::swap(c.left, c.right);
}

inline std::string render_item_expression(const SelectItem& item) {
  SelectItem copy = item;
  copy.alias.reset();
  return to_sql(copy);
}

struct ExtractWalker {
  Extraction result;

  int walk(const SqlAst& ast, int parent) {
    int scope_id = static_cast<int>(result.scopes.size());
    result.scopes.push_back(Scope{scope_id, parent, {}, &ast});

    auto bind = [&](const TableRef& ref) {
      ScopeBinding binding;
      binding.name = ref.binding_name();
      binding.ref = &ref;
      if (ref.is_derived()) {
        binding.is_derived = true;
        binding.derived_scope = walk(*ref.derived, scope_id);
        result.derived_aliases.push_back(AliasBinding{
            AliasBinding::Kind::derived, *ref.alias, {}, ref.derived, {}, scope_id});
      } else {
        binding.table = ref.table;
        if (ref.alias) {
          result.table_aliases.push_back(AliasBinding{
              AliasBinding::Kind::table, *ref.alias, ref.table, nullptr, {}, scope_id});
        }
      }
      for (const ScopeBinding& existing : result.scopes[scope_id].bindings) {
        if (existing.name == binding.name) {
          throw DuplicateAliasError(binding.name, scope_id);
        }
      }
      result.scopes[scope_id].bindings.push_back(std::move(binding));
    };

    for (const TableRef& ref : ast.from_items) bind(ref);
    for (const JoinClause& join : ast.joins) bind(join.table);

    for (const SelectItem& item : ast.projections) {
      if (item.alias) {
        result.column_aliases.push_back(AliasBinding{AliasBinding::Kind::column,
                                                     *item.alias,
                                                     {},
                                                     nullptr,
                                                     render_item_expression(item),
                                                     scope_id});
      }
    }

    auto take = [&](const Predicate& p) {
      if (p.kind != Predicate::Kind::equality) return;
      RawConstraint c{p.left, p.right, scope_id};
      normalize_raw(c);
      result.constraints.push_back(std::move(c));
    };
    for (const JoinClause& join : ast.joins) {
      for (const Predicate& p : join.on) take(p);
    }
    for (const Predicate& p : ast.where_predicates) take(p);

    return scope_id;
  }
};

}  // namespace detail

/// Collects alias bindings and raw equality constraints from every nesting
/// level of a statement. Throws DuplicateAliasError when one FROM scope
/// binds the same name twice. The AST must outlive the result.
inline Extraction extract(const SqlAst& ast) {
  detail::ExtractWalker walker;
  walker.walk(ast, -1);
  return std::move(walker.result);
}

}  // namespace relq
