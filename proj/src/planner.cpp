#include "sqlplan/planner.hpp"

#include <algorithm>

#include "sqlplan/util.hpp"

namespace sqlplan {

RankedBatch rerank(const CandidateBatch& batch, const std::vector<DiscriminationScore>& scores,
                   const std::vector<bool>& eligibility,
                   const std::vector<std::optional<bool>>& executable) {
  if (scores.size() != batch.candidates.size() || eligibility.size() != batch.candidates.size() ||
      (!executable.empty() && executable.size() != batch.candidates.size())) {
    throw ConfigError("rerank: scores/eligibility must align with the candidate batch");
  }
  RankedBatch out;
  out.example_id = batch.example_id;
  out.entries.reserve(batch.candidates.size());
  for (std::size_t i = 0; i < batch.candidates.size(); ++i) {
    RankedEntry entry;
    entry.candidate = batch.candidates[i];
    entry.gen_index = i;
    entry.score = scores[i];
    entry.eligible = eligibility[i];
    if (!executable.empty()) entry.executable = executable[i];
    out.entries.push_back(std::move(entry));
  }
  // Stable: equal scores keep generation order.
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const RankedEntry& a, const RankedEntry& b) {
                     return a.score.value > b.score.value;
                   });
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    if (out.entries[i].eligible) {
      out.chosen_index = i;
      break;
    }
  }
  return out;
}

PlanOutcome plan_example(CompletionBackend& backend, const TaskExample& example,
                         const DbSchema& schema, const std::string& db_path,
                         const PlanConfig& config, ModelKind generator_kind,
                         const CompletionRequest& gen_params, const ExecLimits& limits,
                         const TemplateSet& templates) {
  config.discriminator.validate();
  PlanOutcome outcome;

  CandidateBatch batch =
      generate_candidates(backend, example, schema, generator_kind, gen_params, templates);
  outcome.parses.assign(batch.candidates.size(), std::nullopt);

  bool total_failure = !batch.candidates.empty() &&
                       std::all_of(batch.candidates.begin(), batch.candidates.end(),
                                   [](const CandidateSql& c) {
                                     return c.raw_output.empty() && !c.extraction_ok;
                                   });
  if (batch.candidates.empty() || total_failure) {
    outcome.batch.example_id = example.id;
    return outcome;
  }

  std::vector<std::optional<bool>> executable;
  if (config.executability_check) {
    executable.reserve(batch.candidates.size());
    for (const auto& candidate : batch.candidates) {
      executable.push_back(candidate.extraction_ok
                               ? is_executable(db_path, candidate.extracted_sql, limits)
                               : false);
    }
  }

  std::vector<DiscriminationScore> scores(batch.candidates.size(),
                                          DiscriminationScore::fallback());
  std::vector<bool> eligibility(batch.candidates.size(), false);
  for (std::size_t i = 0; i < batch.candidates.size(); ++i) {
    const auto& candidate = batch.candidates[i];
    bool scoreable = candidate.extraction_ok;
    if (config.executability_check) scoreable = scoreable && *executable[i];
    eligibility[i] = scoreable;
    if (!scoreable) continue;  // fallback score, no discriminator traffic
    auto result = discriminate(backend, example.question, candidate, &schema,
                               config.discriminator, templates);
    ++outcome.discriminator_calls;
    scores[i] = result.score;
    outcome.parses[i] = std::move(result.parse);
  }

  outcome.batch = rerank(batch, scores, eligibility, executable);
  if (outcome.batch.chosen_index) {
    outcome.final_sql =
        outcome.batch.entries[*outcome.batch.chosen_index].candidate.extracted_sql;
  }
  return outcome;
}

}  // namespace sqlplan
