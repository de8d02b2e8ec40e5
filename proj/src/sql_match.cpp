#include "sqlplan/sql_match.hpp"

#include <algorithm>
#include <map>

#include "sqlplan/util.hpp"

namespace sqlplan {

namespace {

struct Token {
  std::string text;       // normalized (lowercased unless a string literal)
  bool is_literal = false;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

/// Lowercases keywords/identifiers/numbers; single- and double-quoted text
/// become 'literals' with content preserved; backticks quote identifiers.
/// Returns nullopt on an unterminated quote.
std::optional<std::vector<Token>> tokenize_sql(const std::string& sql) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < sql.size()) {
    char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\'' || c == '"') {
      char quote = c;
      std::string content;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < sql.size()) {
        if (sql[j] == quote) {
          if (quote == '\'' && j + 1 < sql.size() && sql[j + 1] == quote) {
            content += quote;
            j += 2;
            continue;
          }
          closed = true;
          ++j;
          break;
        }
        content += sql[j];
        ++j;
      }
      if (!closed) return std::nullopt;
      out.push_back(Token{"'" + content + "'", true});
      i = j;
    } else if (c == '`') {
      std::size_t j = sql.find('`', i + 1);
      if (j == std::string::npos) return std::nullopt;
      out.push_back(Token{to_lower(sql.substr(i + 1, j - i - 1)), false});
      i = j + 1;
    } else if (c == '-' && i + 1 < sql.size() && sql[i + 1] == '-') {
      i = sql.find('\n', i);
      if (i == std::string::npos) break;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < sql.size() && ident_char(sql[j])) ++j;
      out.push_back(Token{to_lower(sql.substr(i, j - i)), false});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < sql.size() &&
             (std::isdigit(static_cast<unsigned char>(sql[j])) || sql[j] == '.')) {
        ++j;
      }
      out.push_back(Token{sql.substr(i, j - i), false});
      i = j;
    } else {
      // Operators; fold <> into != and keep the rest verbatim.
      if (i + 1 < sql.size()) {
        std::string two = sql.substr(i, 2);
        if (two == "<=" || two == ">=" || two == "!=" || two == "||") {
          out.push_back(Token{two, false});
          i += 2;
          continue;
        }
        if (two == "<>") {
          out.push_back(Token{"!=", false});
          i += 2;
          continue;
        }
      }
      if (c == ';') {
        ++i;
        continue;
      }
      out.push_back(Token{std::string(1, c), false});
      ++i;
    }
  }
  return out;
}

const std::set<std::string> kNonTableWords = {
    "select", "from",  "where", "group",   "having", "order",  "limit",  "join",
    "inner",  "left",  "right", "full",    "outer",  "cross",  "natural", "on",
    "as",     "using", "and",   "or",      "not",    "in",     "exists",  "between",
    "like",   "is",    "null",  "case",    "when",   "then",   "else",    "end",
    "distinct", "union", "intersect", "except", "all", "by", "asc", "desc"};

bool is_set_op(const std::string& t) {
  return t == "union" || t == "intersect" || t == "except";
}

using TokenSpan = std::vector<Token>;

std::string join_tokens(const TokenSpan& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i].text;
  }
  return out;
}

/// Splits [begin, end) at depth-0 occurrences of any separator in `seps`,
/// honoring BETWEEN..AND (that AND never separates).
std::vector<std::pair<std::size_t, std::size_t>> split_top_level(
    const TokenSpan& tokens, std::size_t begin, std::size_t end,
    const std::set<std::string>& seps) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  int depth = 0;
  int pending_between = 0;
  std::size_t start = begin;
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& t = tokens[i].text;
    if (t == "(") ++depth;
    else if (t == ")") --depth;
    else if (depth == 0 && !tokens[i].is_literal) {
      if (t == "between") ++pending_between;
      else if (t == "and" && pending_between > 0) { --pending_between; continue; }
      if (seps.count(t)) {
        spans.emplace_back(start, i);
        start = i + 1;
      }
    }
  }
  spans.emplace_back(start, end);
  return spans;
}

struct SegmentClauses {
  std::size_t select_begin = 0, select_end = 0;
  std::size_t from_begin = 0, from_end = 0;
  std::size_t where_begin = 0, where_end = 0;
  std::size_t group_begin = 0, group_end = 0;
  std::size_t having_begin = 0, having_end = 0;
  std::size_t order_begin = 0, order_end = 0;
  std::size_t limit_begin = 0, limit_end = 0;
  bool has_select = false;
};

SegmentClauses find_clauses(const TokenSpan& tokens, std::size_t begin, std::size_t end) {
  SegmentClauses c;
  int depth = 0;
  std::size_t* open_end = nullptr;
  // Close the previous clause at the keyword, start the new one after it.
  auto open_clause = [&](std::size_t* begin_field, std::size_t* end_field,
                         std::size_t keyword_pos, std::size_t content_start) {
    if (open_end) *open_end = keyword_pos;
    *begin_field = content_start;
    open_end = end_field;
  };
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& t = tokens[i].text;
    if (t == "(") { ++depth; continue; }
    if (t == ")") { --depth; continue; }
    if (depth != 0 || tokens[i].is_literal) continue;
    if (t == "select") {
      c.has_select = true;
      open_clause(&c.select_begin, &c.select_end, i, i + 1);
    } else if (t == "from") {
      open_clause(&c.from_begin, &c.from_end, i, i + 1);
    } else if (t == "where") {
      open_clause(&c.where_begin, &c.where_end, i, i + 1);
    } else if (t == "group" && i + 1 < end && tokens[i + 1].text == "by") {
      open_clause(&c.group_begin, &c.group_end, i, i + 2);
      ++i;
    } else if (t == "having") {
      open_clause(&c.having_begin, &c.having_end, i, i + 1);
    } else if (t == "order" && i + 1 < end && tokens[i + 1].text == "by") {
      open_clause(&c.order_begin, &c.order_end, i, i + 2);
      ++i;
    } else if (t == "limit") {
      open_clause(&c.limit_begin, &c.limit_end, i, i + 1);
    }
  }
  if (open_end) *open_end = end;
  return c;
}

const std::set<std::string> kJoinWords = {"join"};

/// Alias map for one segment: alias -> table name, from the FROM clause.
std::map<std::string, std::string> collect_aliases(const TokenSpan& tokens, std::size_t begin,
                                                   std::size_t end) {
  std::map<std::string, std::string> aliases;
  int depth = 0;
  bool expect_table = true;
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& t = tokens[i].text;
    if (t == "(") { ++depth; expect_table = false; continue; }
    if (t == ")") { --depth; continue; }
    if (depth != 0) continue;
    if (t == "," || t == "join") { expect_table = true; continue; }
    if (tokens[i].is_literal || kNonTableWords.count(t) || !ident_start(t[0])) continue;
    if (expect_table) {
      std::string table = t;
      std::size_t j = i + 1;
      if (j < end && tokens[j].text == "as") ++j;
      if (j < end && !tokens[j].is_literal && ident_start(tokens[j].text[0]) &&
          !kNonTableWords.count(tokens[j].text)) {
        aliases[tokens[j].text] = table;
        i = j;
      }
      expect_table = false;
    }
  }
  return aliases;
}

/// Rewrites "alias . col" into "table . col" and drops alias definitions
/// ("tbl AS x" / "tbl x" in FROM, "expr AS x" elsewhere, CAST's AS excluded).
TokenSpan normalize_segment(const TokenSpan& tokens, std::size_t begin, std::size_t end,
                            const std::map<std::string, std::string>& aliases,
                            std::size_t from_begin, std::size_t from_end) {
  TokenSpan out;
  std::vector<bool> cast_paren;  // stack: was this paren opened by CAST?
  for (std::size_t i = begin; i < end; ++i) {
    const Token& tok = tokens[i];
    if (tok.text == "(") {
      bool after_cast = !out.empty() && out.back().text == "cast";
      cast_paren.push_back(after_cast);
      out.push_back(tok);
      continue;
    }
    if (tok.text == ")") {
      if (!cast_paren.empty()) cast_paren.pop_back();
      out.push_back(tok);
      continue;
    }
    bool in_cast = !cast_paren.empty() && cast_paren.back();
    if (tok.text == "as" && !in_cast && i + 1 < end && !tokens[i + 1].is_literal &&
        ident_start(tokens[i + 1].text.empty() ? '1' : tokens[i + 1].text[0]) &&
        !kNonTableWords.count(tokens[i + 1].text)) {
      ++i;  // drop "as <alias>"
      continue;
    }
    bool in_from = i >= from_begin && i < from_end;
    if (in_from && !tok.is_literal && aliases.count(tok.text) &&
        !(i + 1 < end && tokens[i + 1].text == ".")) {
      continue;  // bare alias definition in FROM
    }
    if (!tok.is_literal && aliases.count(tok.text) && i + 1 < end &&
        tokens[i + 1].text == ".") {
      out.push_back(Token{aliases.at(tok.text), false});
      continue;
    }
    out.push_back(tok);
  }
  return out;
}

void decompose_segment(const TokenSpan& tokens, std::size_t begin, std::size_t end,
                       QueryComponents& out) {
  SegmentClauses clauses = find_clauses(tokens, begin, end);
  if (!clauses.has_select) return;

  auto aliases = collect_aliases(tokens, clauses.from_begin, clauses.from_end);
  TokenSpan norm = normalize_segment(tokens, begin, end, aliases, clauses.from_begin,
                                     clauses.from_end);
  // Clause offsets shift after normalization; re-find them.
  SegmentClauses c = find_clauses(norm, 0, norm.size());

  // SELECT columns (set semantics over top-level commas).
  std::size_t sel_begin = c.select_begin;
  if (sel_begin < c.select_end && norm[sel_begin].text == "distinct") {
    out.keywords.insert("distinct");
    ++sel_begin;
  }
  for (auto [s, e] : split_top_level(norm, sel_begin, c.select_end, {","})) {
    std::string col = join_tokens(norm, s, e);
    if (!col.empty()) out.select_columns.insert(col);
  }

  // WHERE predicates, connectors dropped.
  if (c.where_begin < c.where_end) {
    for (auto [s, e] : split_top_level(norm, c.where_begin, c.where_end, {"and", "or"})) {
      std::string pred = join_tokens(norm, s, e);
      if (!pred.empty()) out.where_predicates.insert(pred);
    }
  }

  // GROUP BY expressions plus HAVING predicates.
  if (c.group_begin < c.group_end) {
    for (auto [s, e] : split_top_level(norm, c.group_begin, c.group_end, {","})) {
      std::string expr = join_tokens(norm, s, e);
      if (!expr.empty()) out.group_by.insert(expr);
    }
  }
  if (c.having_begin < c.having_end) {
    for (auto [s, e] : split_top_level(norm, c.having_begin, c.having_end, {"and", "or"})) {
      std::string pred = join_tokens(norm, s, e);
      if (!pred.empty()) out.group_by.insert("having " + pred);
    }
  }

  // ORDER BY and LIMIT combine into one ordered component string.
  if (c.order_begin < c.order_end || c.limit_begin < c.limit_end) {
    std::string piece;
    if (c.order_begin < c.order_end) {
      piece = "order by " + join_tokens(norm, c.order_begin, c.order_end);
    }
    if (c.limit_begin < c.limit_end) {
      if (!piece.empty()) piece += ' ';
      piece += "limit " + join_tokens(norm, c.limit_begin, c.limit_end);
    }
    out.order_limit.insert(piece);
  }

  // Structure keywords.
  int depth = 0;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    const std::string& t = norm[i].text;
    if (t == "(") ++depth;
    else if (t == ")") --depth;
    else if (norm[i].is_literal) continue;
    else if (depth == 0 && kJoinWords.count(t)) out.keywords.insert("join");
    else if (depth > 0 && t == "select") out.keywords.insert("nested");
  }
}

}  // namespace

int QueryComponents::present_count() const {
  int n = 0;
  n += !select_columns.empty();
  n += !where_predicates.empty();
  n += !group_by.empty();
  n += !order_limit.empty();
  n += !keywords.empty();
  return n;
}

QueryComponents decompose_query(const std::string& sql) {
  QueryComponents out;
  auto tokens_opt = tokenize_sql(sql);
  if (!tokens_opt || tokens_opt->empty()) return out;
  const TokenSpan& tokens = *tokens_opt;

  bool any_select = false;
  auto segments = split_top_level(tokens, 0, tokens.size(), {"union", "intersect", "except"});
  // Record the operators themselves.
  {
    int depth = 0;
    int pending_between = 0;
    for (const auto& tok : tokens) {
      if (tok.text == "(") ++depth;
      else if (tok.text == ")") --depth;
      else if (depth == 0 && !tok.is_literal) {
        if (tok.text == "between") ++pending_between;
        else if (tok.text == "and" && pending_between > 0) { --pending_between; }
        else if (is_set_op(tok.text)) out.keywords.insert(tok.text);
      }
    }
  }
  for (auto [s, e] : segments) {
    // "union all" leaves a dangling "all" at the segment head.
    if (s < e && tokens[s].text == "all") ++s;
    SegmentClauses probe = find_clauses(tokens, s, e);
    if (probe.has_select) any_select = true;
    decompose_segment(tokens, s, e, out);
  }
  out.parsed_ok = any_select;
  return out;
}

bool exact_match(const std::string& pred_sql, const std::string& gold_sql) {
  QueryComponents p = decompose_query(pred_sql);
  QueryComponents g = decompose_query(gold_sql);
  if (!p.parsed_ok || !g.parsed_ok) return false;
  return p.select_columns == g.select_columns && p.where_predicates == g.where_predicates &&
         p.group_by == g.group_by && p.order_limit == g.order_limit && p.keywords == g.keywords;
}

PartialMatchReport partial_match(const std::vector<std::optional<std::string>>& preds,
                                 const std::vector<std::string>& golds) {
  if (preds.size() != golds.size()) {
    throw ConfigError("partial_match: prediction/gold lists must align");
  }
  long matched = 0, predicted = 0, gold_total = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    QueryComponents g = decompose_query(golds[i]);
    gold_total += g.present_count();
    if (!preds[i]) continue;
    QueryComponents p = decompose_query(*preds[i]);
    if (!p.parsed_ok) continue;
    predicted += p.present_count();
    auto count_match = [&](const std::set<std::string>& a, const std::set<std::string>& b) {
      if (!a.empty() && !b.empty() && a == b) ++matched;
    };
    count_match(p.select_columns, g.select_columns);
    count_match(p.where_predicates, g.where_predicates);
    count_match(p.group_by, g.group_by);
    count_match(p.order_limit, g.order_limit);
    count_match(p.keywords, g.keywords);
  }
  PartialMatchReport report;
  report.acc = predicted > 0 ? 100.0 * static_cast<double>(matched) / static_cast<double>(predicted)
                             : 0.0;
  report.recall =
      gold_total > 0 ? 100.0 * static_cast<double>(matched) / static_cast<double>(gold_total) : 0.0;
  report.f1 = (report.acc + report.recall) > 0.0
                  ? 2.0 * report.acc * report.recall / (report.acc + report.recall)
                  : 0.0;
  return report;
}

}  // namespace sqlplan
