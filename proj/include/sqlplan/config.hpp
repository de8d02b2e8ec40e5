#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqlplan/planner.hpp"

namespace sqlplan {

enum class RunMode { generate, intrinsic, e2e, sweep, quality };

std::optional<RunMode> parse_run_mode(std::string_view s);
std::string to_string(RunMode m);

struct GenParams {
  int max_new_tokens = 300;  // non-reasoning generation budget
  int reasoning_max_new_tokens = 1024;
  double temperature = 0.2;
  int n_samples = 5;
};

/// Full experiment description. Every default in effect is echoed into the
/// run's config snapshot.
struct ExperimentConfig {
  RunMode mode = RunMode::intrinsic;

  // Dataset
  std::string examples_path;
  std::string tables_path;
  std::string db_root;
  std::string difficulty_path;  // sidecar, optional when difficulty is inline
  int n_per_tier = 0;           // 0 = evaluate every loaded example
  std::uint64_t seed = 0;

  // Backend
  std::string backend;  // "mock:<fixture>" or completions endpoint URL
  std::string backend_model;
  int concurrency = 4;

  // Generation
  ModelKind generator_kind = ModelKind::reasoning;
  GenParams gen;

  // Planning / discrimination
  PlanConfig plan;

  // Mode-specific inputs
  std::string candidates_path;  // intrinsic/sweep artifact (generate output)
  std::vector<int> budget_list;
  std::string quality_input;  // records.jsonl of a previous run

  // Oracle and execution sandbox
  int oracle_top_k = 5;
  double oracle_threshold = 1.0;
  int exec_timeout_ms = 5000;
  int exec_row_cap = 1000;
  double macro_f1_threshold = 0.5;

  // Output
  std::string output_dir;
  std::string template_dir;  // empty = built-in templates

  void validate() const;
  ExecLimits exec_limits() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace sqlplan
