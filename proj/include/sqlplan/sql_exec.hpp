#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sqlplan {

enum class ExecStatus { ok, exec_error, timeout };

std::string to_string(ExecStatus s);

/// Normalized cell value: null, integer, real, or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;
using Row = std::vector<Cell>;

/// Absolute tolerance for real-valued cell comparison.
constexpr double kRealTolerance = 1e-6;

struct ExecOutcome {
  ExecStatus status = ExecStatus::exec_error;
  std::vector<Row> rows;   // present iff status == ok
  std::string error_text;  // present iff status == exec_error
};

struct ExecLimits {
  std::chrono::milliseconds timeout{5000};
  std::size_t row_cap = 1000;
};

/// Runs one SELECT (or WITH...SELECT) statement read-only against a SQLite
/// file. Non-SELECT statements are rejected before execution; at most row_cap
/// rows are collected; wall clock is bounded by the timeout.
ExecOutcome execute(const std::string& db_path, const std::string& sql,
                    const ExecLimits& limits = {});

/// True iff execute() succeeds. An absent SQL never touches the database.
bool is_executable(const std::string& db_path, const std::optional<std::string>& sql,
                   const ExecLimits& limits = {});

/// True when the token stream contains ORDER BY outside strings and comments.
bool has_order_by(const std::string& sql);

bool cells_equal(const Cell& a, const Cell& b);
bool rows_equal(const Row& a, const Row& b);

/// Execution-result equivalence: ordered row equality when the gold query
/// orders its output, multiset equality otherwise. Any non-ok outcome on
/// either side compares false.
bool compare_execution(const ExecOutcome& pred, const ExecOutcome& gold, bool gold_has_order_by);

/// Multiset overlap of the cells in the first k rows of each side:
/// |P n G| / max(|P|, |G|); two empty sides overlap fully.
double cell_overlap(const std::vector<Row>& pred_rows, const std::vector<Row>& gold_rows,
                    std::size_t k);

struct OracleLabel {
  bool correct = false;
  double overlap = 0.0;
};

/// Ground-truth correctness of a predicted query: compare the top-k execution
/// results of prediction and gold via cell overlap against a threshold. A
/// prediction that fails to execute is incorrect with zero overlap.
OracleLabel oracle_label(const std::string& db_path, const std::string& pred_sql,
                         const std::string& gold_sql, std::size_t k = 5, double threshold = 1.0,
                         const ExecLimits& limits = {});

/// Same labeling against an already-executed gold outcome (one gold execution
/// per example instead of one per candidate).
OracleLabel oracle_label_with_gold(const std::string& db_path, const std::string& pred_sql,
                                   const ExecOutcome& gold_outcome, std::size_t k = 5,
                                   double threshold = 1.0, const ExecLimits& limits = {});

}  // namespace sqlplan
