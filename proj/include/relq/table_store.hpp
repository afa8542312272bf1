#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "relq/catalog.hpp"
#include "relq/csv.hpp"
#include "relq/errors.hpp"
#include "relq/lexer.hpp"
#include "relq/value.hpp"

namespace relq {

struct Column {
  std::string name;
  ColumnType type = ColumnType::text;
  std::vector<Cell> cells;
  std::size_t null_count = 0;

  friend bool operator==(const Column&, const Column&) = default;
};

/// Immutable columnar table. All columns have row_count cells.
struct Table {
  std::string name;
  std::vector<Column> columns;
  std::size_t row_count = 0;

  const Column* find_column(std::string_view column) const {
    for (const Column& c : columns) {
      if (c.name == column) return &c;
    }
    return nullptr;
  }

  friend bool operator==(const Table&, const Table&) = default;
};

struct TableStore {
  std::map<std::string, Table, std::less<>> tables;

  const Table* find_table(std::string_view name) const {
    auto it = tables.find(name);
    return it == tables.end() ? nullptr : &it->second;
  }

  const Column* find_column(std::string_view table, std::string_view column) const {
    const Table* t = find_table(table);
    return t == nullptr ? nullptr : t->find_column(column);
  }

  const Column& require_column(std::string_view table, std::string_view column) const {
    const Column* c = find_column(table, column);
    if (c == nullptr) {
      throw UnknownColumnError(std::string(table), std::string(column));
    }
    return *c;
  }

  Catalog catalog() const {
    Catalog cat;
    for (const auto& [name, table] : tables) {
      TableSchema schema;
      schema.row_count = table.row_count;
      for (std::size_t i = 0; i < table.columns.size(); ++i) {
        schema.column_order.push_back(table.columns[i].name);
        schema.columns[table.columns[i].name] = ColumnSchema{table.columns[i].type, i};
      }
      cat.tables[name] = std::move(schema);
    }
    return cat;
  }

  friend bool operator==(const TableStore&, const TableStore&) = default;
};

/// A raw cell on its way into a table: nullopt is NULL.
using RawCell = std::optional<std::string>;

/// Builds a typed table from header + raw rows. Column type is inferred:
/// integer if every non-null cell parses as an integer, else decimal, else
/// date (ISO YYYY-MM-DD), else text. The literal string "NULL" stays text.
inline Table build_table(std::string name, std::vector<std::string> header,
                         const std::vector<std::vector<RawCell>>& rows) {
  Table table;
  table.name = std::move(name);
  table.row_count = rows.size();

  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string column_name = to_lower_ascii(header[c]);
    for (const Column& existing : table.columns) {
      if (existing.name == column_name) {
        throw CsvShapeError(table.name, 1, "duplicate column '" + column_name + "'");
      }
    }

    bool all_integer = true;
    bool all_decimal = true;
    bool all_date = true;
    bool any_value = false;
    for (const auto& row : rows) {
      const RawCell& cell = row[c];
      if (!cell) continue;
      any_value = true;
      if (all_integer && !parse_integer(*cell)) all_integer = false;
      if (all_decimal && !parse_decimal(*cell)) all_decimal = false;
      if (all_date && !looks_like_date(*cell)) all_date = false;
      if (!all_integer && !all_decimal && !all_date) break;
    }

    Column column;
    column.name = std::move(column_name);
    if (!any_value) {
      column.type = ColumnType::text;
    } else if (all_integer) {
      column.type = ColumnType::integer;
    } else if (all_decimal) {
      column.type = ColumnType::decimal;
    } else if (all_date) {
      column.type = ColumnType::date;
    } else {
      column.type = ColumnType::text;
    }

    column.cells.reserve(rows.size());
    for (const auto& row : rows) {
      const RawCell& cell = row[c];
      if (!cell) {
        column.cells.emplace_back(std::monostate{});
        ++column.null_count;
        continue;
      }
      switch (column.type) {
        case ColumnType::integer:
          column.cells.emplace_back(*parse_integer(*cell));
          break;
        case ColumnType::decimal:
          column.cells.emplace_back(*parse_decimal(*cell));
          break;
        case ColumnType::date:
        case ColumnType::text:
          column.cells.emplace_back(*cell);
          break;
      }
    }
    table.columns.push_back(std::move(column));
  }
  return table;
}

/// Loads `<table>.csv` (header row required, empty unquoted field = NULL)
/// into a Table named after the case-folded file stem.
inline Table load_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = std::move(buf).str();
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);  // UTF-8 BOM

  std::string table_name = to_lower_ascii(path.stem().string());

  std::vector<CsvRow> rows;
  try {
    rows = parse_csv(text);
  } catch (const detail::CsvSyntaxError& e) {
    throw CsvShapeError(path.filename().string(), e.line, e.what);
  }
  if (rows.empty()) {
    throw CsvShapeError(path.filename().string(), 1, "missing header row");
  }

  std::vector<std::string> header;
  for (const CsvField& f : rows.front().fields) header.push_back(f.text);

  std::vector<std::vector<RawCell>> data;
  data.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].fields.size() != header.size()) {
      throw CsvShapeError(path.filename().string(), rows[r].line,
                          "row has " + std::to_string(rows[r].fields.size()) +
                              " fields, header has " + std::to_string(header.size()));
    }
    std::vector<RawCell> row;
    row.reserve(header.size());
    for (const CsvField& f : rows[r].fields) {
      if (f.text.empty() && !f.quoted) {
        row.emplace_back(std::nullopt);  // NULL
      } else {
        row.emplace_back(f.text);
      }
    }
    data.push_back(std::move(row));
  }

  try {
    return build_table(table_name, std::move(header), data);
  } catch (const CsvShapeError& e) {
    throw CsvShapeError(path.filename().string(), e.line, e.what());
  }
}

/// Loads every *.csv in a directory. File stem = table name.
inline TableStore load_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("not a directory: " + dir.string());
  }

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (to_lower_ascii(entry.path().extension().string()) != ".csv") continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  TableStore store;
  for (const auto& path : files) {
    Table table = load_csv_table(path);
    if (store.tables.contains(table.name)) {
      throw DuplicateTableError(table.name);
    }
    std::string key = table.name;
    store.tables.emplace(std::move(key), std::move(table));
  }
  return store;
}

// ---------------------------------------------------------------------------
// Constraint validation against the catalog.

struct ValidatedConstraint {
  ColumnId left;
  ColumnId right;
  ColumnSchema left_schema;
  ColumnSchema right_schema;
  ColumnType left_type = ColumnType::text;
  ColumnType right_type = ColumnType::text;
  bool type_compatible = true;
};

struct ValidationRejection {
  enum class Reason { unknown_table, unknown_column };

  Reason reason;
  std::string detail;

  std::string status_suffix() const {
    return reason == Reason::unknown_table ? "unknown-table" : "unknown-column";
  }
};

using ValidationResult = std::variant<ValidatedConstraint, ValidationRejection>;

/// Checks both ends against the catalog. Type-incompatible pairs are not
/// rejected; they validate with type_compatible = false and the profiler
/// falls back to canonical text comparison.
inline ValidationResult validate(const ColumnId& left, const ColumnId& right,
                                 const Catalog& catalog) {
  for (const ColumnId* end : {&left, &right}) {
    const TableSchema* schema = catalog.find_table(end->table);
    if (schema == nullptr) {
      return ValidationRejection{ValidationRejection::Reason::unknown_table,
                                 "table '" + end->table + "' is not in the catalog"};
    }
    if (!schema->has_column(end->column)) {
      return ValidationRejection{ValidationRejection::Reason::unknown_column,
                                 "column '" + end->to_string() + "' is not in the catalog"};
    }
  }
  ValidatedConstraint vc;
  vc.left = left;
  vc.right = right;
  vc.left_schema = *catalog.column_schema(left.table, left.column);
  vc.right_schema = *catalog.column_schema(right.table, right.column);
  vc.left_type = vc.left_schema.type;
  vc.right_type = vc.right_schema.type;
  vc.type_compatible = types_comparable(vc.left_type, vc.right_type);
  return vc;
}

}  // namespace relq
