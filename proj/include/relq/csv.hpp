#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace relq {

/// One CSV field. `quoted` distinguishes an empty quoted field ("", an empty
/// string) from an empty unquoted field (NULL in the table store).
struct CsvField {
  std::string text;
  bool quoted = false;
};

struct CsvRow {
  std::vector<CsvField> fields;
  std::size_t line = 1;  // 1-based line where the row starts
};

namespace detail {

struct CsvSyntaxError {
  std::size_t line;
  std::string what;
};

}  // namespace detail

/// RFC 4180 reader: comma separator, double-quote quoting with doubling,
/// CRLF or LF row terminators, newlines allowed inside quoted fields.
/// Throws detail::CsvSyntaxError (callers wrap it with file context).
inline std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  CsvField field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&]() {
    row.fields.push_back(std::move(field));
    field = {};
    field_started = false;
  };
  auto end_row = [&]() {
    end_field();
    rows.push_back(std::move(row));
    row = {};
    row.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.text += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.quoted) {
          throw detail::CsvSyntaxError{line, "unexpected '\"' inside unquoted field"};
        }
        if (field.quoted) {
          throw detail::CsvSyntaxError{line, "data after closing quote"};
        }
        field.quoted = true;
        field_started = true;
        in_quotes = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;  // handled by \n
        ++line;
        end_row();
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        if (field.quoted) {
          throw detail::CsvSyntaxError{line, "data after closing quote"};
        }
        field.text += c;
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw detail::CsvSyntaxError{line, "unterminated quoted field"};
  }
  // Flush a final row that lacked a trailing newline.
  if (field_started || field.quoted || !row.fields.empty()) end_row();
  return rows;
}

/// Quotes a value for CSV output when needed.
inline std::string csv_field(std::string_view value) {
  bool needs = value.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs && !value.empty() &&
      (value.front() == ' ' || value.back() == ' ')) {
    needs = true;
  }
  if (!needs) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    out += c;
    if (c == '"') out += '"';
  }
  out += "\"";
  return out;
}

}  // namespace relq
