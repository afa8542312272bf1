#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relq/lexer.hpp"

namespace relq {

/// `[qualifier.]column`, names already normalized (unquoted identifiers are
/// case-folded, delimited ones kept exact).
struct ColumnRef {
  std::optional<std::string> qualifier;
  std::string column;

  friend bool operator==(const ColumnRef&, const ColumnRef&) = default;

  std::string to_string() const {
    return qualifier ? *qualifier + "." + column : column;
  }
};

struct SelectItem {
  enum class Kind { star, qualified_star, column, function, literal };

  Kind kind = Kind::star;
  ColumnRef column;                 // kind == column
  std::string qualifier;            // kind == qualified_star
  std::string function_name;        // kind == function, normalized
  std::vector<std::string> args;    // kind == function, raw token runs
  std::string literal;              // kind == literal, original token text
  std::optional<std::string> alias;

  friend bool operator==(const SelectItem&, const SelectItem&) = default;

  /// Output column name this item exposes to an enclosing query, if any.
  std::optional<std::string> output_name() const {
    if (alias) return alias;
    if (kind == Kind::column) return column.column;
    return std::nullopt;
  }
};

struct Predicate {
  enum class Kind { equality, opaque };

  Kind kind = Kind::opaque;
  ColumnRef left;    // equality only
  ColumnRef right;   // equality only
  std::string text;  // opaque: canonical token join, kept for fidelity

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct SqlAst;

/// FROM-clause entry: either a named base table or a parenthesized subquery.
/// A derived table always carries an alias; the parser rejects it otherwise.
struct TableRef {
  std::string table;                      // named
  std::shared_ptr<const SqlAst> derived;  // derived
  std::optional<std::string> alias;

  bool is_derived() const { return derived != nullptr; }

  /// Name this entry binds in its FROM scope.
  const std::string& binding_name() const { return alias ? *alias : table; }

  friend bool operator==(const TableRef& a, const TableRef& b);
};

enum class JoinKind { inner, left };

struct JoinClause {
  JoinKind kind = JoinKind::inner;
  TableRef table;
  std::vector<Predicate> on;

  friend bool operator==(const JoinClause&, const JoinClause&) = default;
};

enum class OrderDirection { asc, desc };

struct OrderItem {
  ColumnRef column;
  OrderDirection direction = OrderDirection::asc;

  friend bool operator==(const OrderItem&, const OrderItem&) = default;
};

struct SqlAst {
  std::vector<SelectItem> projections;
  std::vector<TableRef> from_items;
  std::vector<JoinClause> joins;
  std::vector<Predicate> where_predicates;
  std::vector<ColumnRef> group_by;
  std::vector<OrderItem> order_by;

  friend bool operator==(const SqlAst&, const SqlAst&) = default;
};

inline bool operator==(const TableRef& a, const TableRef& b) {
  if (a.table != b.table || a.alias != b.alias) return false;
  if (a.is_derived() != b.is_derived()) return false;
  if (!a.is_derived()) return true;
  return *a.derived == *b.derived;  // deep compare
}

// ---------------------------------------------------------------------------
// Canonical SQL rendering. parse(to_sql(ast)) reproduces `ast` for every AST
// the parser can emit.

namespace detail {

inline bool needs_quoting(std::string_view name) {
  if (name.empty()) return true;
  if (!is_ident_start(name[0])) return true;
  for (char c : name) {
    if (!is_ident_char(c)) return true;
    if (c >= 'A' && c <= 'Z') return true;  // would fold on re-parse
  }
  return is_keyword_text(name);
}

inline std::string quote_name(std::string_view name) {
  if (!needs_quoting(name)) return std::string(name);
  std::string out = "`";
  for (char c : name) {
    out += c;
    if (c == '`') out += '`';
  }
  out += "`";
  return out;
}

}  // namespace detail

inline std::string to_sql(const SqlAst& ast);

inline std::string to_sql(const ColumnRef& ref) {
  std::string out;
  if (ref.qualifier) out += detail::quote_name(*ref.qualifier) + ".";
  out += detail::quote_name(ref.column);
  return out;
}

inline std::string to_sql(const Predicate& p) {
  if (p.kind == Predicate::Kind::equality) {
    return to_sql(p.left) + " = " + to_sql(p.right);
  }
  return p.text;
}

inline std::string to_sql(const SelectItem& item) {
  std::string out;
  switch (item.kind) {
    case SelectItem::Kind::star: return "*";
    case SelectItem::Kind::qualified_star:
      return detail::quote_name(item.qualifier) + ".*";
    case SelectItem::Kind::column: out = to_sql(item.column); break;
    case SelectItem::Kind::function: {
      out = detail::quote_name(item.function_name) + "(";
      for (std::size_t i = 0; i < item.args.size(); ++i) {
        if (i) out += ", ";
        out += item.args[i];
      }
      out += ")";
      break;
    }
    case SelectItem::Kind::literal: out = item.literal; break;
  }
  if (item.alias) out += " AS " + detail::quote_name(*item.alias);
  return out;
}

inline std::string to_sql(const TableRef& ref) {
  std::string out = ref.is_derived() ? "(" + to_sql(*ref.derived) + ")"
                                     : detail::quote_name(ref.table);
  if (ref.alias) out += " AS " + detail::quote_name(*ref.alias);
  return out;
}

inline std::string to_sql(const SqlAst& ast) {
  std::string out = "SELECT ";
  for (std::size_t i = 0; i < ast.projections.size(); ++i) {
    if (i) out += ", ";
    out += to_sql(ast.projections[i]);
  }
  if (!ast.from_items.empty()) {
    out += " FROM ";
    for (std::size_t i = 0; i < ast.from_items.size(); ++i) {
      if (i) out += ", ";
      out += to_sql(ast.from_items[i]);
    }
  }
  for (const JoinClause& join : ast.joins) {
    out += join.kind == JoinKind::inner ? " INNER JOIN " : " LEFT JOIN ";
    out += to_sql(join.table);
    out += " ON ";
    for (std::size_t i = 0; i < join.on.size(); ++i) {
      if (i) out += " AND ";
      out += to_sql(join.on[i]);
    }
  }
  if (!ast.where_predicates.empty()) {
    out += " WHERE ";
    for (std::size_t i = 0; i < ast.where_predicates.size(); ++i) {
      if (i) out += " AND ";
      out += to_sql(ast.where_predicates[i]);
    }
  }
  if (!ast.group_by.empty()) {
    out += " GROUP BY ";
    for (std::size_t i = 0; i < ast.group_by.size(); ++i) {
      if (i) out += ", ";
      out += to_sql(ast.group_by[i]);
    }
  }
  if (!ast.order_by.empty()) {
    out += " ORDER BY ";
    for (std::size_t i = 0; i < ast.order_by.size(); ++i) {
      if (i) out += ", ";
      out += to_sql(ast.order_by[i].column);
      if (ast.order_by[i].direction == OrderDirection::desc) out += " DESC";
    }
  }
  return out;
}

}  // namespace relq
