#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace relq {

enum class ColumnType { integer, decimal, date, text };

inline const char* to_string(ColumnType t) {
  switch (t) {
    case ColumnType::integer: return "integer";
    case ColumnType::decimal: return "decimal";
    case ColumnType::date: return "date";
    case ColumnType::text: return "text";
  }
  return "?";
}

/// integer~integer, decimal~decimal, integer~decimal, date~date, text~text.
/// Everything else is flagged but still profiled by canonical text form.
inline bool types_comparable(ColumnType a, ColumnType b) {
  auto numeric = [](ColumnType t) {
    return t == ColumnType::integer || t == ColumnType::decimal;
  };
  return a == b || (numeric(a) && numeric(b));
}

/// One table cell. Dates and text both live in the string alternative; the
/// column-level ColumnType tells them apart.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

inline bool is_null(const Cell& c) {
  return std::holds_alternative<std::monostate>(c);
}

inline std::string render_number(double d) {
  // Integral doubles render as integers so that decimal 7.0 keys equal to
  // integer 7. Everything else takes the shortest round-trip form.
  if (std::floor(d) == d && d >= -9223372036854775808.0 &&
      d < 9223372036854775808.0) {
    return std::to_string(static_cast<std::int64_t>(d));
  }
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, ptr);
}

/// Canonical key used for distinct counting and membership tests. Two
/// non-null cells are treated as equal exactly when their keys match; this
/// gives numeric equality across integer/decimal and text-form comparison
/// for everything else.
inline std::string canonical_key(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return render_number(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline std::optional<std::int64_t> parse_integer(std::string_view s) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

inline std::optional<double> parse_decimal(std::string_view s) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(out)) return std::nullopt;
  return out;
}

/// Strict ISO YYYY-MM-DD with plausible month/day ranges.
inline bool looks_like_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  int month = (s[5] - '0') * 10 + (s[6] - '0');
  int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

}  // namespace relq
