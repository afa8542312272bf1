#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "relq/errors.hpp"

namespace relq {

enum class TokenKind {
  keyword,
  identifier,
  number,
  string,
  symbol,
  star,
  comma,
  lparen,
  rparen,
  dot,
  semicolon,
};

struct Token {
  TokenKind kind;
  std::string text;  // original source slice; quotes/delimiters included
  std::size_t line = 1;
  std::size_t column = 1;

  // Stream identity ignores positions.
  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

inline std::string to_upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline bool is_keyword_text(std::string_view word) {
  static const std::unordered_set<std::string> kw = {
      "SELECT", "FROM",   "WHERE",  "GROUP",    "ORDER",  "BY",       "AS",
      "ON",     "AND",    "OR",     "JOIN",     "INNER",  "LEFT",     "RIGHT",
      "FULL",   "OUTER",  "CROSS",  "NATURAL",  "USING",  "ASC",      "DESC",
      "UNION",  "ALL",    "HAVING", "LIMIT",    "OFFSET", "DISTINCT", "INSERT",
      "UPDATE", "DELETE", "CREATE", "DROP",     "ALTER",  "TRUNCATE", "WITH",
      "NULL",   "NOT",    "IS",     "IN",       "LIKE",   "BETWEEN",  "EXISTS",
      "CASE",   "WHEN",   "THEN",   "ELSE",     "END",    "OVER",     "VALUES",
      "SET",    "INTO",   "EXPLAIN", "DESCRIBE", "SHOW",  "USE",      "GRANT",
      "REVOKE",
  };
  return kw.contains(to_upper_ascii(word));
}

inline bool token_is_keyword(const Token& t, std::string_view upper) {
  return t.kind == TokenKind::keyword && to_upper_ascii(t.text) == upper;
}

namespace detail {

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '$';
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace detail

/// Splits one statement into tokens. `--` comments and whitespace are
/// dropped; string literals and delimited identifiers keep their quotes in
/// `text`. Throws LexError on an unterminated literal or an illegal byte.
inline std::vector<Token> tokenize(std::string_view sql, std::size_t start_line = 1) {
  std::vector<Token> out;
  std::size_t line = start_line;
  std::size_t col = 1;
  std::size_t i = 0;
  const std::size_t n = sql.size();

  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (sql[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  // Reads a run delimited by `quote`, where a doubled delimiter is an
  // escaped occurrence. Returns the slice including delimiters.
  auto read_delimited = [&](char quote, const char* what) {
    std::size_t start = i;
    std::size_t start_line_ = line;
    std::size_t start_col = col;
    advance(1);
    while (i < n) {
      if (sql[i] == quote) {
        if (i + 1 < n && sql[i + 1] == quote) {
          advance(2);
          continue;
        }
        advance(1);
        return std::string(sql.substr(start, i - start));
      }
      advance(1);
    }
    throw LexError(start_line_, start_col,
                   std::string(sql.substr(start, std::min<std::size_t>(12, n - start))),
                   std::string("unterminated ") + what);
  };

  while (i < n) {
    char c = sql[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < n && sql[i + 1] == '-') {
      while (i < n && sql[i] != '\n') advance(1);
      continue;
    }

    std::size_t tok_line = line;
    std::size_t tok_col = col;

    if (detail::is_ident_start(c)) {
      std::size_t start = i;
      while (i < n && detail::is_ident_char(sql[i])) advance(1);
      std::string text(sql.substr(start, i - start));
      TokenKind kind = is_keyword_text(text) ? TokenKind::keyword : TokenKind::identifier;
      out.push_back({kind, std::move(text), tok_line, tok_col});
      continue;
    }
    if (detail::is_digit(c)) {
      std::size_t start = i;
      while (i < n && detail::is_digit(sql[i])) advance(1);
      if (i + 1 < n && sql[i] == '.' && detail::is_digit(sql[i + 1])) {
        advance(1);
        while (i < n && detail::is_digit(sql[i])) advance(1);
      }
      out.push_back({TokenKind::number, std::string(sql.substr(start, i - start)),
                     tok_line, tok_col});
      continue;
    }
    if (c == '\'') {
      out.push_back({TokenKind::string, read_delimited('\'', "string literal"),
                     tok_line, tok_col});
      continue;
    }
    if (c == '`' || c == '"') {
      out.push_back({TokenKind::identifier, read_delimited(c, "delimited identifier"),
                     tok_line, tok_col});
      continue;
    }

    switch (c) {
      case '*': out.push_back({TokenKind::star, "*", tok_line, tok_col}); advance(1); continue;
      case ',': out.push_back({TokenKind::comma, ",", tok_line, tok_col}); advance(1); continue;
      case '(': out.push_back({TokenKind::lparen, "(", tok_line, tok_col}); advance(1); continue;
      case ')': out.push_back({TokenKind::rparen, ")", tok_line, tok_col}); advance(1); continue;
      case '.': out.push_back({TokenKind::dot, ".", tok_line, tok_col}); advance(1); continue;
      case ';': out.push_back({TokenKind::semicolon, ";", tok_line, tok_col}); advance(1); continue;
      default: break;
    }

    if (c == '<') {
      if (i + 1 < n && (sql[i + 1] == '=' || sql[i + 1] == '>')) {
        out.push_back({TokenKind::symbol, std::string(sql.substr(i, 2)), tok_line, tok_col});
        advance(2);
      } else {
        out.push_back({TokenKind::symbol, "<", tok_line, tok_col});
        advance(1);
      }
      continue;
    }
    if (c == '>') {
      if (i + 1 < n && sql[i + 1] == '=') {
        out.push_back({TokenKind::symbol, ">=", tok_line, tok_col});
        advance(2);
      } else {
        out.push_back({TokenKind::symbol, ">", tok_line, tok_col});
        advance(1);
      }
      continue;
    }
    if (c == '!' && i + 1 < n && sql[i + 1] == '=') {
      out.push_back({TokenKind::symbol, "!=", tok_line, tok_col});
      advance(2);
      continue;
    }
    if (c == '=' || c == '+' || c == '-' || c == '/' || c == '%') {
      out.push_back({TokenKind::symbol, std::string(1, c), tok_line, tok_col});
      advance(1);
      continue;
    }

    std::string snippet(sql.substr(i, std::min<std::size_t>(8, n - i)));
    throw LexError(tok_line, tok_col, snippet,
                   "illegal character 0x" + [](unsigned char b) {
                     const char* hex = "0123456789abcdef";
                     return std::string{hex[b >> 4], hex[b & 0xf]};
                   }(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace relq
