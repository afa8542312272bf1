#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relq/ast.hpp"
#include "relq/lexer.hpp"

namespace relq {

namespace detail {

inline std::string normalize_identifier(const Token& tok) {
  const std::string& t = tok.text;
  if (!t.empty() && (t.front() == '`' || t.front() == '"')) {
    // Delimited: strip quotes, undouble the delimiter, keep case.
    char q = t.front();
    std::string out;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      out += t[i];
      if (t[i] == q) ++i;  // skip the doubled delimiter
    }
    return out;
  }
  return to_lower_ascii(t);
}

inline std::string join_tokens(const std::vector<std::string>& texts) {
  std::string out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i) out += ' ';
    out += texts[i];
  }
  return out;
}

}  // namespace detail

/// Recursive-descent parser for the supported SELECT subset.
///
/// Grammar (keywords case-insensitive):
///   select    := SELECT item {, item} [FROM refs] [WHERE preds]
///                [GROUP BY cols] [ORDER BY cols [ASC|DESC]]
///   item      := * | name.* | colref [alias] | name(args) [alias]
///                | literal [alias]
///   refs      := ref { , ref | [INNER|LEFT [OUTER]] JOIN ref ON preds }
///   ref       := name [alias] | ( select ) alias
///   preds     := pred {AND pred}; OR-chains collapse into one opaque entry
///   pred      := operand cmp operand, Equality iff `colref = colref`
///
/// Recognized-but-unsupported constructs (UNION, HAVING, DISTINCT, other
/// verbs, ...) raise UnsupportedSyntax; broken input raises ParseError.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SqlAst parse_statement() {
    if (at_end()) fail("SELECT statement");
    if (peek().kind == TokenKind::keyword && !is_kw("SELECT")) {
      std::string verb = to_upper_ascii(peek().text);
      static const char* verbs[] = {"INSERT",  "UPDATE",   "DELETE", "CREATE",
                                    "DROP",    "ALTER",    "TRUNCATE", "WITH",
                                    "EXPLAIN", "DESCRIBE", "SHOW",   "SET",
                                    "USE",     "GRANT",    "REVOKE", "VALUES"};
      for (const char* v : verbs) {
        if (verb == v) throw UnsupportedSyntax(verb + std::string(" statement"));
      }
    }
    SqlAst ast = parse_select();
    if (!at_end() && peek().kind == TokenKind::semicolon) advance();
    if (!at_end()) fail("end of statement");
    return ast;
  }

 private:
  static constexpr int kMaxDepth = 64;

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek(std::size_t ahead = 0) const { return tokens_[pos_ + ahead]; }
  bool has(std::size_t ahead) const { return pos_ + ahead < tokens_.size(); }
  const Token& advance() { return tokens_[pos_++]; }

  bool is_kw(std::string_view upper, std::size_t ahead = 0) const {
    return has(ahead) && token_is_keyword(peek(ahead), upper);
  }

  bool accept_kw(std::string_view upper) {
    if (is_kw(upper)) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    if (at_end()) {
      std::size_t line = tokens_.empty() ? 1 : tokens_.back().line;
      std::size_t col = tokens_.empty() ? 1 : tokens_.back().column;
      throw ParseError(line, col, expected, "");
    }
    throw ParseError(peek().line, peek().column, expected, peek().text);
  }

  void expect_kw(std::string_view upper) {
    if (!accept_kw(upper)) fail(std::string(upper));
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) {
        parser.fail("shallower nesting (limit " + std::to_string(kMaxDepth) + ")");
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  SqlAst parse_select() {
    DepthGuard guard(*this);
    expect_kw("SELECT");
    if (is_kw("DISTINCT")) throw UnsupportedSyntax("SELECT DISTINCT");

    SqlAst ast;
    ast.projections.push_back(parse_select_item());
    while (!at_end() && peek().kind == TokenKind::comma) {
      advance();
      ast.projections.push_back(parse_select_item());
    }

    if (accept_kw("FROM")) {
      ast.from_items.push_back(parse_table_ref());
      for (;;) {
        if (!at_end() && peek().kind == TokenKind::comma) {
          advance();
          ast.from_items.push_back(parse_table_ref());
          continue;
        }
        if (is_kw("RIGHT") || is_kw("FULL") || is_kw("CROSS") || is_kw("NATURAL")) {
          throw UnsupportedSyntax(to_upper_ascii(peek().text) + " JOIN");
        }
        if (is_kw("JOIN") || is_kw("INNER") || is_kw("LEFT")) {
          ast.joins.push_back(parse_join());
          continue;
        }
        break;
      }
    }

    if (accept_kw("WHERE")) {
      ast.where_predicates = parse_predicate_list();
    }

    if (accept_kw("GROUP")) {
      expect_kw("BY");
      ast.group_by.push_back(parse_column_ref());
      while (!at_end() && peek().kind == TokenKind::comma) {
        advance();
        ast.group_by.push_back(parse_column_ref());
      }
    }
    if (is_kw("HAVING")) throw UnsupportedSyntax("HAVING");

    if (accept_kw("ORDER")) {
      expect_kw("BY");
      ast.order_by.push_back(parse_order_item());
      while (!at_end() && peek().kind == TokenKind::comma) {
        advance();
        ast.order_by.push_back(parse_order_item());
      }
    }

    if (is_kw("UNION")) throw UnsupportedSyntax("UNION");
    if (is_kw("LIMIT") || is_kw("OFFSET") || is_kw("HAVING")) {
      throw UnsupportedSyntax(to_upper_ascii(peek().text));
    }
    return ast;
  }

  SelectItem parse_select_item() {
    if (at_end()) fail("select list item");
    SelectItem item;

    if (peek().kind == TokenKind::star) {
      advance();
      item.kind = SelectItem::Kind::star;
      return item;  // no alias on bare `*`
    }
    if (peek().kind == TokenKind::number || peek().kind == TokenKind::string) {
      item.kind = SelectItem::Kind::literal;
      item.literal = advance().text;
      item.alias = parse_optional_alias();
      return item;
    }
    if (peek().kind != TokenKind::identifier) fail("select list item");

    if (has(1) && peek(1).kind == TokenKind::dot && has(2) &&
        peek(2).kind == TokenKind::star) {
      item.kind = SelectItem::Kind::qualified_star;
      item.qualifier = expect_name("star qualifier");
      advance();  // .
      advance();  // *
      return item;
    }
    if (has(1) && peek(1).kind == TokenKind::lparen) {
      item.kind = SelectItem::Kind::function;
      item.function_name = expect_name("function name");
      item.args = parse_call_args();
      if (is_kw("OVER")) throw UnsupportedSyntax("window function (OVER)");
      item.alias = parse_optional_alias();
      return item;
    }

    item.kind = SelectItem::Kind::column;
    item.column = parse_column_ref();
    item.alias = parse_optional_alias();
    return item;
  }

  /// Raw argument list of a call: tokens up to the matching ')', split on
  /// top-level commas and kept as canonical text runs.
  std::vector<std::string> parse_call_args() {
    advance();  // (
    std::vector<std::string> args;
    std::vector<std::string> current;
    int depth = 1;
    for (;;) {
      if (at_end()) fail("')' closing the argument list");
      const Token& tok = peek();
      if (tok.kind == TokenKind::semicolon) fail("')' closing the argument list");
      if (tok.kind == TokenKind::lparen) ++depth;
      if (tok.kind == TokenKind::rparen) {
        if (--depth == 0) {
          advance();
          break;
        }
      }
      if (tok.kind == TokenKind::comma && depth == 1) {
        if (current.empty()) fail("function argument");
        args.push_back(detail::join_tokens(current));
        current.clear();
        advance();
        continue;
      }
      current.push_back(tok.text);
      advance();
    }
    if (!current.empty()) {
      args.push_back(detail::join_tokens(current));
    } else if (!args.empty()) {
      fail("function argument");  // trailing comma
    }
    return args;
  }

  std::string expect_name(const char* what) {
    if (at_end() || peek().kind != TokenKind::identifier) fail(what);
    const Token& tok = peek();
    std::string name = detail::normalize_identifier(tok);
    if (name.empty()) {
      throw ParseError(tok.line, tok.column, std::string("non-empty ") + what,
                       tok.text);
    }
    advance();
    return name;
  }

  std::optional<std::string> parse_optional_alias() {
    if (accept_kw("AS")) return expect_name("alias after AS");
    if (!at_end() && peek().kind == TokenKind::identifier) {
      return expect_name("alias");
    }
    return std::nullopt;
  }

  ColumnRef parse_column_ref() {
    std::string first = expect_name("column reference");
    if (!at_end() && peek().kind == TokenKind::dot) {
      advance();
      return ColumnRef{first, expect_name("column name after '.'")};
    }
    return ColumnRef{std::nullopt, std::move(first)};
  }

  OrderItem parse_order_item() {
    OrderItem item;
    item.column = parse_column_ref();
    if (accept_kw("ASC")) {
      item.direction = OrderDirection::asc;
    } else if (accept_kw("DESC")) {
      item.direction = OrderDirection::desc;
    }
    return item;
  }

  TableRef parse_table_ref() {
    if (at_end()) fail("table reference");
    if (peek().kind == TokenKind::lparen) {
      advance();
      if (!is_kw("SELECT")) fail("SELECT in derived table");
      SqlAst inner = parse_select();
      if (at_end() || peek().kind != TokenKind::rparen) fail("')'");
      advance();
      TableRef ref;
      ref.derived = std::make_shared<const SqlAst>(std::move(inner));
      ref.alias = parse_optional_alias();
      if (!ref.alias) fail("alias for derived table");
      return ref;
    }
    TableRef ref;
    ref.table = expect_name("table reference");
    ref.alias = parse_optional_alias();
    return ref;
  }

  JoinClause parse_join() {
    JoinClause join;
    if (accept_kw("INNER")) {
      join.kind = JoinKind::inner;
    } else if (accept_kw("LEFT")) {
      accept_kw("OUTER");
      join.kind = JoinKind::left;
    }
    expect_kw("JOIN");
    join.table = parse_table_ref();
    expect_kw("ON");
    join.on = parse_predicate_list();
    return join;
  }

  struct Operand {
    std::optional<ColumnRef> column;
    std::vector<std::string> tokens;
  };

  struct Comparison {
    bool is_equality = false;
    ColumnRef left, right;
    std::vector<std::string> tokens;
  };

  /// AND binds tighter than OR, so a top-level OR anywhere makes the whole
  /// expression one opaque predicate; only a pure AND chain splits into
  /// individual predicates.
  std::vector<Predicate> parse_predicate_list() {
    std::vector<Comparison> comparisons;
    std::vector<std::string> connectives;
    comparisons.push_back(parse_comparison());
    while (is_kw("AND") || is_kw("OR")) {
      connectives.push_back(advance().text);
      comparisons.push_back(parse_comparison());
    }

    bool any_or = false;
    for (const std::string& c : connectives) {
      if (to_upper_ascii(c) == "OR") any_or = true;
    }

    std::vector<Predicate> out;
    if (any_or) {
      std::vector<std::string> texts;
      for (std::size_t i = 0; i < comparisons.size(); ++i) {
        if (i) texts.push_back(connectives[i - 1]);
        texts.insert(texts.end(), comparisons[i].tokens.begin(),
                     comparisons[i].tokens.end());
      }
      Predicate p;
      p.kind = Predicate::Kind::opaque;
      p.text = detail::join_tokens(texts);
      out.push_back(std::move(p));
      return out;
    }
    for (const Comparison& cmp : comparisons) {
      Predicate p;
      if (cmp.is_equality) {
        p.kind = Predicate::Kind::equality;
        p.left = cmp.left;
        p.right = cmp.right;
      } else {
        p.kind = Predicate::Kind::opaque;
        p.text = detail::join_tokens(cmp.tokens);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  Comparison parse_comparison() {
    Comparison cmp;
    Operand lhs = parse_operand();
    cmp.tokens = lhs.tokens;

    if (at_end()) fail("comparison operator");
    const Token& op = peek();
    if (op.kind == TokenKind::keyword) {
      std::string upper = to_upper_ascii(op.text);
      if (upper == "LIKE" || upper == "IN" || upper == "IS" ||
          upper == "BETWEEN" || upper == "NOT" || upper == "EXISTS") {
        throw UnsupportedSyntax(upper + " predicate");
      }
    }
    bool is_eq = false;
    if (op.kind == TokenKind::symbol) {
      const std::string& t = op.text;
      if (t == "=") {
        is_eq = true;
      } else if (t != "<" && t != ">" && t != "<=" && t != ">=" && t != "<>" &&
                 t != "!=") {
        fail("comparison operator");
      }
    } else {
      fail("comparison operator");
    }
    cmp.tokens.push_back(advance().text);

    Operand rhs = parse_operand();
    cmp.tokens.insert(cmp.tokens.end(), rhs.tokens.begin(), rhs.tokens.end());

    if (is_eq && lhs.column && rhs.column) {
      cmp.is_equality = true;
      cmp.left = *lhs.column;
      cmp.right = *rhs.column;
    }
    return cmp;
  }

  Operand parse_operand() {
    if (at_end()) fail("predicate operand");
    Operand operand;
    const Token& tok = peek();

    if (tok.kind == TokenKind::identifier) {
      if (has(1) && peek(1).kind == TokenKind::lparen) {
        operand.tokens.push_back(advance().text);  // function name
        operand.tokens.push_back(advance().text);  // (
        int depth = 1;
        while (depth > 0) {
          if (at_end() || peek().kind == TokenKind::semicolon) fail("')'");
          if (peek().kind == TokenKind::lparen) ++depth;
          if (peek().kind == TokenKind::rparen) --depth;
          operand.tokens.push_back(advance().text);
        }
        return operand;
      }
      std::size_t before = pos_;
      ColumnRef ref = parse_column_ref();
      operand.column = ref;
      for (std::size_t i = before; i < pos_; ++i) operand.tokens.push_back(tokens_[i].text);
      return operand;
    }
    if (tok.kind == TokenKind::number || tok.kind == TokenKind::string) {
      operand.tokens.push_back(advance().text);
      return operand;
    }
    if (tok.kind == TokenKind::symbol && (tok.text == "-" || tok.text == "+")) {
      if (has(1) && peek(1).kind == TokenKind::number) {
        operand.tokens.push_back(advance().text);
        operand.tokens.push_back(advance().text);
        return operand;
      }
      fail("number after sign");
    }
    if (token_is_keyword(tok, "NULL")) {
      operand.tokens.push_back(advance().text);
      return operand;
    }
    if (tok.kind == TokenKind::lparen) {
      throw UnsupportedSyntax("parenthesized expression in predicate");
    }
    if (tok.kind == TokenKind::keyword) {
      std::string upper = to_upper_ascii(tok.text);
      if (upper == "NOT" || upper == "EXISTS" || upper == "CASE") {
        throw UnsupportedSyntax(upper + " predicate");
      }
    }
    fail("predicate operand");
  }
};

inline SqlAst parse(std::vector<Token> tokens) {
  return Parser(std::move(tokens)).parse_statement();
}

inline SqlAst parse_sql(std::string_view sql) { return parse(tokenize(sql)); }

// ---------------------------------------------------------------------------
// Query-log handling: `;`-separated statements, `--` comments, parsed
// independently so one bad statement never sinks the file.

struct StatementRecord {
  enum class Status { ok, lex_error, parse_error, unsupported };

  std::size_t index = 0;  // ordinal among non-empty statements
  std::size_t line = 1;   // 1-based line where the statement starts
  std::string sql;        // raw statement text
  std::shared_ptr<const SqlAst> ast;  // set when status == ok
  Status status = Status::ok;
  std::string message;

  bool ok() const { return status == Status::ok; }
};

namespace detail {

struct RawStatement {
  std::string text;
  std::size_t line;
};

/// Splits on top-level ';', honoring quotes and `--` comments so a quoted
/// semicolon never ends a statement.
inline std::vector<RawStatement> split_statements(std::string_view log) {
  std::vector<RawStatement> out;
  std::size_t line = 1;
  std::size_t seg_start = 0;
  std::size_t seg_line = 1;
  char quote = 0;
  bool comment = false;

  auto flush = [&](std::size_t end) {
    out.push_back({std::string(log.substr(seg_start, end - seg_start)), seg_line});
  };

  for (std::size_t i = 0; i < log.size(); ++i) {
    char c = log[i];
    if (c == '\n') {
      ++line;
      comment = false;
      continue;
    }
    if (comment) continue;
    if (quote) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '-' && i + 1 < log.size() && log[i + 1] == '-') {
      comment = true;
      continue;
    }
    if (c == '\'' || c == '`' || c == '"') {
      quote = c;
      continue;
    }
    if (c == ';') {
      flush(i);
      seg_start = i + 1;
      seg_line = line;
    }
  }
  if (seg_start < log.size()) flush(log.size());
  return out;
}

}  // namespace detail

/// Parses every statement of a query log. Failures are recorded per
/// statement and parsing continues; nothing here throws.
inline std::vector<StatementRecord> parse_log(std::string_view log_text) {
  std::vector<StatementRecord> out;
  std::size_t index = 0;
  for (const detail::RawStatement& raw : detail::split_statements(log_text)) {
    StatementRecord rec;
    rec.line = raw.line;
    rec.sql = raw.text;

    std::vector<Token> tokens;
    try {
      tokens = tokenize(raw.text, raw.line);
    } catch (const LexError& e) {
      rec.index = index++;
      rec.status = StatementRecord::Status::lex_error;
      rec.message = e.what();
      out.push_back(std::move(rec));
      continue;
    }
    if (tokens.empty()) continue;  // whitespace/comments only

    rec.line = tokens.front().line;
    rec.index = index++;
    try {
      rec.ast = std::make_shared<const SqlAst>(parse(std::move(tokens)));
    } catch (const UnsupportedSyntax& e) {
      rec.status = StatementRecord::Status::unsupported;
      rec.message = e.what();
    } catch (const ParseError& e) {
      rec.status = StatementRecord::Status::parse_error;
      rec.message = e.what();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace relq
