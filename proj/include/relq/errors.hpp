#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace relq {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LexError : Error {
  std::size_t line;
  std::size_t column;
  std::string snippet;

  LexError(std::size_t line, std::size_t column, std::string snippet,
           const std::string& what)
      : Error("lex error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what +
              (snippet.empty() ? "" : " near '" + snippet + "'")),
        line(line),
        column(column),
        snippet(std::move(snippet)) {}
};

struct ParseError : Error {
  std::size_t line;
  std::size_t column;
  std::string expected;
  std::string found;

  ParseError(std::size_t line, std::size_t column, std::string expected,
             std::string found)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": expected " + expected + ", found " +
              (found.empty() ? "end of input" : "'" + found + "'")),
        line(line),
        column(column),
        expected(std::move(expected)),
        found(std::move(found)) {}
};

// Recognized SQL that is outside the supported SELECT subset. Distinct from
// ParseError so callers can report "skipped" rather than "broken".
struct UnsupportedSyntax : Error {
  std::string construct;

  explicit UnsupportedSyntax(std::string construct)
      : Error("unsupported syntax: " + construct),
        construct(std::move(construct)) {}
};

struct DuplicateAliasError : Error {
  std::string name;
  int scope;

  DuplicateAliasError(std::string name, int scope)
      : Error("duplicate alias '" + name + "' in the same FROM scope"),
        name(std::move(name)),
        scope(scope) {}
};

struct IoError : Error {
  using Error::Error;
};

struct CsvShapeError : Error {
  std::string file;
  std::size_t line;

  CsvShapeError(std::string file, std::size_t line, const std::string& what)
      : Error("csv error in " + file + " line " + std::to_string(line) + ": " +
              what),
        file(std::move(file)),
        line(line) {}
};

struct DuplicateTableError : Error {
  std::string table;

  explicit DuplicateTableError(std::string table)
      : Error("duplicate table '" + table + "' after case folding"),
        table(std::move(table)) {}
};

struct UnknownColumnError : Error {
  std::string table;
  std::string column;

  UnknownColumnError(std::string table, std::string column)
      : Error("unknown column " + table + "." + column),
        table(std::move(table)),
        column(std::move(column)) {}
};

struct EmptyTableError : Error {
  std::string table;

  explicit EmptyTableError(std::string table)
      : Error("table '" + table + "' has no rows"), table(std::move(table)) {}
};

struct MissingMetricsError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace relq
