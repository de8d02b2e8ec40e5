#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqlplan/discriminator.hpp"
#include "sqlplan/generator.hpp"
#include "sqlplan/sql_exec.hpp"

namespace sqlplan {

struct PlanConfig {
  bool executability_check = false;
  DiscriminatorConfig discriminator;
};

struct RankedEntry {
  CandidateSql candidate;
  std::size_t gen_index = 0;  // original generation order
  DiscriminationScore score;
  std::optional<bool> executable;  // present only when the check ran
  bool eligible = false;           // may be chosen as the final answer
};

/// Candidates sorted by score descending with a stable tie-break on
/// generation order. chosen_index points into `entries` at the best eligible
/// entry, absent when nothing is eligible.
struct RankedBatch {
  std::string example_id;
  std::vector<RankedEntry> entries;
  std::optional<std::size_t> chosen_index;
};

/// Pure re-ranking step. scores/eligibility (and executable, when non-empty)
/// align with the batch's generation order.
RankedBatch rerank(const CandidateBatch& batch, const std::vector<DiscriminationScore>& scores,
                   const std::vector<bool>& eligibility,
                   const std::vector<std::optional<bool>>& executable = {});

struct PlanOutcome {
  std::optional<std::string> final_sql;
  RankedBatch batch;
  /// Reasoning parses for scored candidates, by generation index.
  std::vector<std::optional<ReasoningParse>> parses;
  std::size_t discriminator_calls = 0;
};

/// Full per-example pipeline: sample candidates, (optionally) filter by
/// executability, score, rank, and pick the final query. In the enhanced mode
/// non-executable candidates never reach the discriminator; in naive mode
/// every extractable candidate is scored.
PlanOutcome plan_example(CompletionBackend& backend, const TaskExample& example,
                         const DbSchema& schema, const std::string& db_path,
                         const PlanConfig& config, ModelKind generator_kind,
                         const CompletionRequest& gen_params, const ExecLimits& limits = {},
                         const TemplateSet& templates = TemplateSet::builtin());

}  // namespace sqlplan
