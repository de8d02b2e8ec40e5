#include "sqlplan/metrics.hpp"

#include "sqlplan/util.hpp"

namespace sqlplan {

std::optional<double> pairwise_accuracy(
    const std::vector<std::pair<double, double>>& correct_incorrect_pairs) {
  if (correct_incorrect_pairs.empty()) return std::nullopt;
  std::size_t wins = 0;
  for (const auto& [correct_score, incorrect_score] : correct_incorrect_pairs) {
    if (correct_score > incorrect_score) ++wins;
  }
  return 100.0 * static_cast<double>(wins) /
         static_cast<double>(correct_incorrect_pairs.size());
}

std::optional<double> macro_f1(const std::vector<LabeledScore>& labeled, double threshold) {
  if (labeled.empty()) return std::nullopt;
  // Confusion counts with "correct" as the positive class.
  long tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& item : labeled) {
    bool predicted_correct = !item.score.failed && item.score.value >= threshold;
    if (predicted_correct && item.oracle_correct) ++tp;
    else if (predicted_correct && !item.oracle_correct) ++fp;
    else if (!predicted_correct && item.oracle_correct) ++fn;
    else ++tn;
  }
  auto f1_of = [](long tp_c, long fp_c, long fn_c) {
    long denom = 2 * tp_c + fp_c + fn_c;
    return denom > 0 ? 2.0 * static_cast<double>(tp_c) / static_cast<double>(denom) : 0.0;
  };
  double f1_correct = f1_of(tp, fp, fn);
  double f1_incorrect = f1_of(tn, fn, fp);
  return 100.0 * (f1_correct + f1_incorrect) / 2.0;
}

double hit_at_1(const std::vector<LabeledBatch>& batches) {
  if (batches.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& labeled : batches) {
    if (!labeled.batch.chosen_index) continue;
    const RankedEntry& chosen = labeled.batch.entries[*labeled.batch.chosen_index];
    if (chosen.gen_index < labeled.oracle_by_gen_index.size() &&
        labeled.oracle_by_gen_index[chosen.gen_index]) {
      ++hits;
    }
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(batches.size());
}

double mrr(const std::vector<LabeledBatch>& batches) {
  if (batches.empty()) return 0.0;
  CompensatedSum acc;
  for (const auto& labeled : batches) {
    double contribution = 0.0;
    for (std::size_t rank = 0; rank < labeled.batch.entries.size(); ++rank) {
      std::size_t gen_index = labeled.batch.entries[rank].gen_index;
      if (gen_index < labeled.oracle_by_gen_index.size() &&
          labeled.oracle_by_gen_index[gen_index]) {
        contribution = 1.0 / static_cast<double>(rank + 1);
        break;
      }
    }
    acc.add(contribution);
  }
  return 100.0 * acc.sum() / static_cast<double>(batches.size());
}

double failure_rate(const std::vector<DiscriminationScore>& scores) {
  if (scores.empty()) return 0.0;
  std::size_t failed = 0;
  for (const auto& s : scores) {
    if (s.failed) ++failed;
  }
  return 100.0 * static_cast<double>(failed) / static_cast<double>(scores.size());
}

TierAccuracyReport execution_accuracy_report(const std::vector<EndToEndCase>& cases,
                                             const std::string& db_root,
                                             const ExecLimits& limits) {
  TierAccuracyReport report;
  std::map<Difficulty, std::pair<int, int>> counts;  // correct, total
  int correct_total = 0;
  for (const auto& item : cases) {
    auto& [tier_correct, tier_total] = counts[item.example.difficulty];
    ++tier_total;
    if (!item.final_sql) continue;
    std::string db_path = db_path_for(db_root, item.example.db_id);
    ExecOutcome pred = execute(db_path, *item.final_sql, limits);
    if (pred.status != ExecStatus::ok) continue;
    ExecOutcome gold = execute(db_path, item.example.gold_sql, limits);
    if (compare_execution(pred, gold, has_order_by(item.example.gold_sql))) {
      ++tier_correct;
      ++correct_total;
    }
  }
  for (const auto& [tier, pair] : counts) {
    report.per_tier[tier] =
        pair.second > 0 ? 100.0 * static_cast<double>(pair.first) / pair.second : 0.0;
  }
  report.tier_counts = counts;
  report.overall = cases.empty() ? 0.0
                                 : 100.0 * static_cast<double>(correct_total) /
                                       static_cast<double>(cases.size());
  return report;
}

}  // namespace sqlplan
