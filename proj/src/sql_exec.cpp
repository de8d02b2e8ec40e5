#include "sqlplan/sql_exec.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "sqlplan/util.hpp"

namespace sqlplan {

std::string to_string(ExecStatus s) {
  switch (s) {
    case ExecStatus::ok: return "ok";
    case ExecStatus::exec_error: return "exec_error";
    case ExecStatus::timeout: return "timeout";
  }
  return "exec_error";
}

namespace {

/// Skips whitespace and SQL comments ("--" line, "/* */" block) from `pos`.
std::size_t skip_insignificant(const std::string& s, std::size_t pos) {
  while (pos < s.size()) {
    char c = s[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else if (c == '-' && pos + 1 < s.size() && s[pos + 1] == '-') {
      pos = s.find('\n', pos);
      if (pos == std::string::npos) return s.size();
    } else if (c == '/' && pos + 1 < s.size() && s[pos + 1] == '*') {
      pos = s.find("*/", pos + 2);
      if (pos == std::string::npos) return s.size();
      pos += 2;
    } else {
      break;
    }
  }
  return pos;
}

bool is_read_only_statement(const std::string& sql) {
  std::size_t pos = skip_insignificant(sql, 0);
  std::string_view rest = std::string_view(sql).substr(pos);
  return starts_with_ci(rest, "select") || starts_with_ci(rest, "with");
}

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool expired = false;
};

int progress_callback(void* ctx) {
  auto* deadline = static_cast<Deadline*>(ctx);
  if (std::chrono::steady_clock::now() >= deadline->at) {
    deadline->expired = true;
    return 1;  // abort the statement
  }
  return 0;
}

Cell read_cell(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_NULL:
      return std::monostate{};
    case SQLITE_INTEGER:
      return static_cast<std::int64_t>(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT:
      return sqlite3_column_double(stmt, col);
    default: {  // TEXT and BLOB both normalize to text
      const unsigned char* text = sqlite3_column_text(stmt, col);
      int n = sqlite3_column_bytes(stmt, col);
      return std::string(reinterpret_cast<const char*>(text ? text : (const unsigned char*)""),
                         static_cast<std::size_t>(text ? n : 0));
    }
  }
}

/// Canonical multiset key for a cell. Integers and integral reals share a key
/// so aggregate-type drift does not break overlap counting.
std::string cell_key(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "null";
  if (std::holds_alternative<std::string>(cell)) return "t:" + std::get<std::string>(cell);
  double v = std::holds_alternative<std::int64_t>(cell)
                 ? static_cast<double>(std::get<std::int64_t>(cell))
                 : std::get<double>(cell);
  double rounded = std::round(v);
  if (std::abs(v - rounded) < 1e-9 && std::abs(v) < 9.007199254740992e15) {
    return "n:" + std::to_string(static_cast<std::int64_t>(rounded));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "n:%.6f", v);
  return buf;
}

int type_rank(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return 0;
  if (std::holds_alternative<std::string>(c)) return 2;
  return 1;  // numeric
}

double numeric_value(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return static_cast<double>(std::get<std::int64_t>(c));
  return std::get<double>(c);
}

bool cell_less(const Cell& a, const Cell& b) {
  int ra = type_rank(a), rb = type_rank(b);
  if (ra != rb) return ra < rb;
  if (ra == 1) return numeric_value(a) < numeric_value(b);
  if (ra == 2) return std::get<std::string>(a) < std::get<std::string>(b);
  return false;  // both null
}

bool row_less(const Row& a, const Row& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), cell_less);
}

}  // namespace

ExecOutcome execute(const std::string& db_path, const std::string& sql, const ExecLimits& limits) {
  ExecOutcome outcome;
  if (trim(sql).empty()) {
    outcome.error_text = "empty statement";
    return outcome;
  }
  if (!is_read_only_statement(sql)) {
    outcome.error_text = "rejected: only SELECT statements are executed";
    return outcome;
  }

  sqlite3* db = nullptr;
  if (sqlite3_open_v2(db_path.c_str(), &db, SQLITE_OPEN_READONLY, nullptr) != SQLITE_OK) {
    outcome.error_text = db ? sqlite3_errmsg(db) : "cannot open database";
    if (db) sqlite3_close(db);
    return outcome;
  }

  Deadline deadline{std::chrono::steady_clock::now() + limits.timeout};
  sqlite3_progress_handler(db, 500, progress_callback, &deadline);

  sqlite3_stmt* stmt = nullptr;
  const char* tail = nullptr;
  int rc = sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt, &tail);
  if (rc != SQLITE_OK || stmt == nullptr) {
    outcome.status = deadline.expired ? ExecStatus::timeout : ExecStatus::exec_error;
    outcome.error_text = sqlite3_errmsg(db);
    if (stmt) sqlite3_finalize(stmt);
    sqlite3_close(db);
    return outcome;
  }
  if (tail != nullptr) {
    std::string remainder(tail);
    if (skip_insignificant(remainder, 0) < remainder.size()) {
      sqlite3_finalize(stmt);
      sqlite3_close(db);
      outcome.error_text = "rejected: trailing content after the first statement";
      return outcome;
    }
  }

  int cols = sqlite3_column_count(stmt);
  while (true) {
    rc = sqlite3_step(stmt);
    if (rc == SQLITE_ROW) {
      if (outcome.rows.size() >= limits.row_cap) break;
      Row row;
      row.reserve(static_cast<std::size_t>(cols));
      for (int c = 0; c < cols; ++c) row.push_back(read_cell(stmt, c));
      outcome.rows.push_back(std::move(row));
    } else if (rc == SQLITE_DONE) {
      break;
    } else {
      outcome.rows.clear();
      if (deadline.expired || rc == SQLITE_INTERRUPT) {
        outcome.status = ExecStatus::timeout;
      } else {
        outcome.status = ExecStatus::exec_error;
        outcome.error_text = sqlite3_errmsg(db);
      }
      sqlite3_finalize(stmt);
      sqlite3_close(db);
      return outcome;
    }
  }
  outcome.status = ExecStatus::ok;
  sqlite3_finalize(stmt);
  sqlite3_close(db);
  return outcome;
}

bool is_executable(const std::string& db_path, const std::optional<std::string>& sql,
                   const ExecLimits& limits) {
  if (!sql || trim(*sql).empty()) return false;
  return execute(db_path, *sql, limits).status == ExecStatus::ok;
}

bool has_order_by(const std::string& sql) {
  // Token scan skipping string literals, quoted identifiers and comments.
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < sql.size()) {
    char c = sql[i];
    if (c == '\'' || c == '"' || c == '`') {
      char quote = c;
      ++i;
      while (i < sql.size()) {
        if (sql[i] == quote) {
          if (quote == '\'' && i + 1 < sql.size() && sql[i + 1] == '\'') {
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        ++i;
      }
    } else if (c == '-' && i + 1 < sql.size() && sql[i + 1] == '-') {
      i = sql.find('\n', i);
      if (i == std::string::npos) break;
    } else if (c == '/' && i + 1 < sql.size() && sql[i + 1] == '*') {
      i = sql.find("*/", i + 2);
      if (i == std::string::npos) break;
      i += 2;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < sql.size() &&
             (std::isalnum(static_cast<unsigned char>(sql[j])) || sql[j] == '_')) {
        ++j;
      }
      words.push_back(to_lower(sql.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  for (std::size_t w = 0; w + 1 < words.size(); ++w) {
    if (words[w] == "order" && words[w + 1] == "by") return true;
  }
  return false;
}

bool cells_equal(const Cell& a, const Cell& b) {
  int ra = type_rank(a), rb = type_rank(b);
  if (ra != rb) return false;
  if (ra == 0) return true;
  if (ra == 2) return std::get<std::string>(a) == std::get<std::string>(b);
  return std::abs(numeric_value(a) - numeric_value(b)) <= kRealTolerance;
}

bool rows_equal(const Row& a, const Row& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!cells_equal(a[i], b[i])) return false;
  }
  return true;
}

bool compare_execution(const ExecOutcome& pred, const ExecOutcome& gold, bool gold_has_order_by) {
  if (pred.status != ExecStatus::ok || gold.status != ExecStatus::ok) return false;
  if (pred.rows.size() != gold.rows.size()) return false;
  if (gold_has_order_by) {
    for (std::size_t i = 0; i < pred.rows.size(); ++i) {
      if (!rows_equal(pred.rows[i], gold.rows[i])) return false;
    }
    return true;
  }
  std::vector<Row> p = pred.rows;
  std::vector<Row> g = gold.rows;
  std::sort(p.begin(), p.end(), row_less);
  std::sort(g.begin(), g.end(), row_less);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!rows_equal(p[i], g[i])) return false;
  }
  return true;
}

double cell_overlap(const std::vector<Row>& pred_rows, const std::vector<Row>& gold_rows,
                    std::size_t k) {
  std::map<std::string, std::size_t> pred_cells, gold_cells;
  std::size_t pred_total = 0, gold_total = 0;
  for (std::size_t r = 0; r < std::min(k, pred_rows.size()); ++r) {
    for (const Cell& cell : pred_rows[r]) {
      ++pred_cells[cell_key(cell)];
      ++pred_total;
    }
  }
  for (std::size_t r = 0; r < std::min(k, gold_rows.size()); ++r) {
    for (const Cell& cell : gold_rows[r]) {
      ++gold_cells[cell_key(cell)];
      ++gold_total;
    }
  }
  if (pred_total == 0 && gold_total == 0) return 1.0;
  std::size_t intersection = 0;
  for (const auto& [key, count] : pred_cells) {
    auto it = gold_cells.find(key);
    if (it != gold_cells.end()) intersection += std::min(count, it->second);
  }
  return static_cast<double>(intersection) /
         static_cast<double>(std::max(pred_total, gold_total));
}

OracleLabel oracle_label_with_gold(const std::string& db_path, const std::string& pred_sql,
                                   const ExecOutcome& gold_outcome, std::size_t k,
                                   double threshold, const ExecLimits& limits) {
  if (gold_outcome.status != ExecStatus::ok) return OracleLabel{false, 0.0};
  ExecOutcome pred = execute(db_path, pred_sql, limits);
  if (pred.status != ExecStatus::ok) return OracleLabel{false, 0.0};
  double overlap = cell_overlap(pred.rows, gold_outcome.rows, k);
  return OracleLabel{overlap >= threshold, overlap};
}

OracleLabel oracle_label(const std::string& db_path, const std::string& pred_sql,
                         const std::string& gold_sql, std::size_t k, double threshold,
                         const ExecLimits& limits) {
  return oracle_label_with_gold(db_path, pred_sql, execute(db_path, gold_sql, limits), k,
                                threshold, limits);
}

}  // namespace sqlplan
