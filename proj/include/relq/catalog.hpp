#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relq/value.hpp"

namespace relq {

/// A fully qualified base-table column, the canonical end of a constraint.
struct ColumnId {
  std::string table;
  std::string column;

  friend bool operator==(const ColumnId&, const ColumnId&) = default;
  friend auto operator<=>(const ColumnId&, const ColumnId&) = default;

  std::string to_string() const { return table + "." + column; }
};

struct ColumnSchema {
  ColumnType type = ColumnType::text;
  std::size_t ordinal = 0;

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;
};

struct TableSchema {
  std::vector<std::string> column_order;
  std::map<std::string, ColumnSchema, std::less<>> columns;
  std::size_t row_count = 0;

  bool has_column(std::string_view name) const {
    return columns.find(name) != columns.end();
  }

  friend bool operator==(const TableSchema&, const TableSchema&) = default;
};

struct Catalog {
  std::map<std::string, TableSchema, std::less<>> tables;

  const TableSchema* find_table(std::string_view name) const {
    auto it = tables.find(name);
    return it == tables.end() ? nullptr : &it->second;
  }

  bool has_table(std::string_view name) const { return find_table(name) != nullptr; }

  bool has_column(std::string_view table, std::string_view column) const {
    const TableSchema* t = find_table(table);
    return t != nullptr && t->has_column(column);
  }

  std::optional<ColumnSchema> column_schema(std::string_view table,
                                            std::string_view column) const {
    const TableSchema* t = find_table(table);
    if (t == nullptr) return std::nullopt;
    auto it = t->columns.find(column);
    if (it == t->columns.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

}  // namespace relq
