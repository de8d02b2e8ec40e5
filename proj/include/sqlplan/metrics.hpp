#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqlplan/dataset.hpp"
#include "sqlplan/discriminator.hpp"
#include "sqlplan/planner.hpp"
#include "sqlplan/sql_exec.hpp"

namespace sqlplan {

struct LabeledScore {
  DiscriminationScore score;
  bool oracle_correct = false;
};

/// Percent of pairs where the correct candidate's score strictly exceeds the
/// incorrect one's; ties count as misses. Absent for no pairs.
std::optional<double> pairwise_accuracy(
    const std::vector<std::pair<double, double>>& correct_incorrect_pairs);

/// Macro-averaged F1 over the {correct, incorrect} classes with prediction =
/// (score >= threshold); fallback scores always predict incorrect. A class
/// that never appears and is never predicted scores F1 = 0.
std::optional<double> macro_f1(const std::vector<LabeledScore>& labeled, double threshold = 0.5);

/// A ranked batch plus per-candidate oracle labels indexed by generation
/// order (entry.gen_index looks them up).
struct LabeledBatch {
  RankedBatch batch;
  std::vector<bool> oracle_by_gen_index;
};

/// Percent of batches whose chosen entry is oracle-correct; an absent choice
/// counts as incorrect.
double hit_at_1(const std::vector<LabeledBatch>& batches);

/// Mean reciprocal rank (x100) of the best-ranked oracle-correct entry; a
/// batch without a correct entry contributes zero.
double mrr(const std::vector<LabeledBatch>& batches);

/// Percent of scores carrying the failure sentinel.
double failure_rate(const std::vector<DiscriminationScore>& scores);

struct IntrinsicReport {
  std::optional<double> pw_acc;
  std::optional<double> macro_f1;
  std::optional<double> hit_at_1;
  std::optional<double> mrr;
  std::optional<double> fail_rate;
};

struct TierAccuracyReport {
  std::map<Difficulty, double> per_tier;          // percent per tier
  std::map<Difficulty, std::pair<int, int>> tier_counts;  // correct / total
  double overall = 0.0;                           // example-weighted
};

struct EndToEndCase {
  TaskExample example;
  std::optional<std::string> final_sql;
};

/// Executes prediction and gold per example and scores execution equivalence,
/// aggregated per difficulty tier and overall.
TierAccuracyReport execution_accuracy_report(const std::vector<EndToEndCase>& cases,
                                             const std::string& db_root,
                                             const ExecLimits& limits = {});

struct EndToEndReport {
  TierAccuracyReport execution;
  double exact_match = 0.0;  // percent
  double partial_acc = 0.0;
  double partial_recall = 0.0;
  double partial_f1 = 0.0;
};

}  // namespace sqlplan
