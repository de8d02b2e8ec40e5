#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sqlplan {

/// Clause decomposition used by the gold-SQL matching metrics. The comparison
/// is structural, not semantic: queries are tokenized case-insensitively,
/// table aliases are resolved to table names, and each query is reduced to
/// five component kinds:
///   select columns | where predicates | group by (incl. having) |
///   order by + limit | keywords (distinct/join/intersect/union/except/nested)
/// Set semantics within each kind; set-operation branches merge their
/// components. This is a deliberately simplified decomposition (connector
/// structure inside WHERE is ignored, FROM tables only surface through alias
/// resolution and the join keyword).
struct QueryComponents {
  bool parsed_ok = false;
  std::set<std::string> select_columns;
  std::set<std::string> where_predicates;
  std::set<std::string> group_by;
  std::set<std::string> order_limit;
  std::set<std::string> keywords;

  /// Number of non-empty component kinds.
  int present_count() const;
};

QueryComponents decompose_query(const std::string& sql);

/// All five normalized component kinds agree. An unparseable prediction never
/// matches.
bool exact_match(const std::string& pred_sql, const std::string& gold_sql);

struct PartialMatchReport {
  double acc = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Micro-aggregated component matching over a corpus: acc = matched /
/// predicted components, recall = matched / gold components, f1 harmonic.
/// Absent or unparseable predictions contribute no predicted components while
/// their gold components still count.
PartialMatchReport partial_match(const std::vector<std::optional<std::string>>& preds,
                                 const std::vector<std::string>& golds);

}  // namespace sqlplan
