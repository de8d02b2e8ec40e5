#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqlplan/config.hpp"
#include "sqlplan/metrics.hpp"
#include "sqlplan/text_metrics.hpp"

namespace sqlplan {

constexpr const char* kHarnessVersion = "0.1.0";

/// Everything one run produces. report/records are deterministic for a fixed
/// config with a mock backend; wall-clock metadata lives only in the config
/// snapshot.
struct RunRecord {
  nlohmann::json config_snapshot;
  std::vector<nlohmann::json> records;  // one object per example, id-sorted
  nlohmann::json report;
  std::string report_csv;
};

/// Writes config.snapshot, records.jsonl, report.json and report.csv into
/// output_dir (created if needed). A `_INCOMPLETE` marker flags partially
/// written directories; it is removed last. Returns the directory path.
std::string persist_run(const RunRecord& record, const std::string& output_dir);

/// Candidate artifact IO (newline-delimited, one record per example:
/// {example_id, candidates: [{raw_output, extracted_sql, extraction_ok}]}).
std::map<std::string, std::vector<CandidateSql>> load_candidate_artifact(
    const std::string& path);
std::string candidate_artifact_to_jsonl(
    const std::vector<std::pair<std::string, std::vector<CandidateSql>>>& batches);

/// Samples candidates for every example and writes the candidate artifact
/// (candidates.jsonl) next to the usual run files.
RunRecord run_generate(const ExperimentConfig& config);

/// Oracle-labels a pre-generated candidate artifact, scores it under the
/// configured discriminator, and reports PwAcc / macro F1 / Hit@1 / MRR /
/// failure rate plus reasoning-quality metrics for the reasoning kind.
RunRecord run_intrinsic(const ExperimentConfig& config);

/// Full generator->discriminator->planner pipeline per example; reports
/// execution accuracy per tier and overall, exact match and partial match.
RunRecord run_end_to_end(const ExperimentConfig& config);

/// run_intrinsic once per budget in budget_list (ascending); one CSV row per
/// budget.
RunRecord run_budget_sweep(const ExperimentConfig& config);

/// Reasoning-quality metrics over the traces stored in a previous run's
/// records.jsonl.
RunRecord run_quality(const ExperimentConfig& config);

/// Dispatch on config.mode; persists into config.output_dir when set.
RunRecord run_experiment(const ExperimentConfig& config);

}  // namespace sqlplan
