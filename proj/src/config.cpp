#include "sqlplan/config.hpp"

#include "sqlplan/util.hpp"

namespace sqlplan {

using nlohmann::json;

std::optional<RunMode> parse_run_mode(std::string_view s) {
  std::string l = to_lower(trim(s));
  if (l == "generate") return RunMode::generate;
  if (l == "intrinsic") return RunMode::intrinsic;
  if (l == "e2e" || l == "end_to_end" || l == "end-to-end") return RunMode::e2e;
  if (l == "sweep") return RunMode::sweep;
  if (l == "quality") return RunMode::quality;
  return std::nullopt;
}

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::generate: return "generate";
    case RunMode::intrinsic: return "intrinsic";
    case RunMode::e2e: return "e2e";
    case RunMode::sweep: return "sweep";
    case RunMode::quality: return "quality";
  }
  return "intrinsic";
}

void ExperimentConfig::validate() const {
  plan.discriminator.validate();
  if (gen.n_samples < 1) throw ConfigError("gen.n_samples must be >= 1");
  if (gen.max_new_tokens < 1 || gen.reasoning_max_new_tokens < 1)
    throw ConfigError("generation token budgets must be >= 1");
  if (gen.temperature < 0.0) throw ConfigError("gen.temperature must be >= 0");
  if (oracle_top_k < 1) throw ConfigError("oracle_top_k must be >= 1");
  if (oracle_threshold < 0.0 || oracle_threshold > 1.0)
    throw ConfigError("oracle_threshold must lie in [0,1]");
  if (macro_f1_threshold <= 0.0 || macro_f1_threshold >= 1.0)
    throw ConfigError("macro_f1_threshold must lie in (0,1)");
  if (n_per_tier < 0) throw ConfigError("n_per_tier must be >= 0");
  if (exec_timeout_ms < 1 || exec_row_cap < 1)
    throw ConfigError("execution limits must be positive");
  if (mode == RunMode::sweep) {
    if (budget_list.empty()) throw ConfigError("sweep mode requires a non-empty budget_list");
    for (std::size_t i = 0; i < budget_list.size(); ++i) {
      if (budget_list[i] < 1) throw ConfigError("budgets must be >= 1");
      if (i > 0 && budget_list[i] <= budget_list[i - 1])
        throw ConfigError("budget_list must be strictly increasing");
    }
  }
  if (mode == RunMode::quality && quality_input.empty())
    throw ConfigError("quality mode requires quality_input (a records.jsonl path)");
  if ((mode == RunMode::intrinsic || mode == RunMode::sweep) && candidates_path.empty())
    throw ConfigError("intrinsic/sweep modes require candidates_path (run `generate` first)");
  if (mode != RunMode::quality && backend.empty())
    throw ConfigError("backend descriptor is required");
}

ExecLimits ExperimentConfig::exec_limits() const {
  return ExecLimits{std::chrono::milliseconds(exec_timeout_ms),
                    static_cast<std::size_t>(exec_row_cap)};
}

json config_to_json(const ExperimentConfig& c) {
  return json{
      {"mode", to_string(c.mode)},
      {"examples_path", c.examples_path},
      {"tables_path", c.tables_path},
      {"db_root", c.db_root},
      {"difficulty_path", c.difficulty_path},
      {"n_per_tier", c.n_per_tier},
      {"seed", c.seed},
      {"backend", c.backend},
      {"backend_model", c.backend_model},
      {"concurrency", c.concurrency},
      {"generator_kind", to_string(c.generator_kind)},
      {"gen",
       {{"max_new_tokens", c.gen.max_new_tokens},
        {"reasoning_max_new_tokens", c.gen.reasoning_max_new_tokens},
        {"temperature", c.gen.temperature},
        {"n_samples", c.gen.n_samples}}},
      {"plan",
       {{"executability_check", c.plan.executability_check},
        {"discriminator",
         {{"kind", to_string(c.plan.discriminator.kind)},
          {"scoring", to_string(c.plan.discriminator.scoring)},
          {"schema_in_prompt", c.plan.discriminator.schema_in_prompt},
          {"max_new_tokens", c.plan.discriminator.max_new_tokens},
          {"temperature", c.plan.discriminator.temperature}}}}},
      {"candidates_path", c.candidates_path},
      {"budget_list", c.budget_list},
      {"quality_input", c.quality_input},
      {"oracle_top_k", c.oracle_top_k},
      {"oracle_threshold", c.oracle_threshold},
      {"exec_timeout_ms", c.exec_timeout_ms},
      {"exec_row_cap", c.exec_row_cap},
      {"macro_f1_threshold", c.macro_f1_threshold},
      {"output_dir", c.output_dir},
      {"template_dir", c.template_dir},
  };
}

namespace {

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  // A run's config.snapshot nests the config; accept it directly so runs can
  // be replayed from their own snapshots.
  if (j.contains("harness_version") && j.contains("config") && j["config"].is_object()) {
    return config_from_json(j["config"]);
  }
  ExperimentConfig c;
  if (j.contains("mode")) {
    auto mode = parse_run_mode(j.at("mode").get<std::string>());
    if (!mode) throw ConfigError("unknown mode '" + j.at("mode").get<std::string>() + "'");
    c.mode = *mode;
  }
  read_field(j, "examples_path", c.examples_path);
  read_field(j, "tables_path", c.tables_path);
  read_field(j, "db_root", c.db_root);
  read_field(j, "difficulty_path", c.difficulty_path);
  read_field(j, "n_per_tier", c.n_per_tier);
  read_field(j, "seed", c.seed);
  read_field(j, "backend", c.backend);
  read_field(j, "backend_model", c.backend_model);
  read_field(j, "concurrency", c.concurrency);
  if (j.contains("generator_kind")) {
    auto kind = parse_model_kind(j.at("generator_kind").get<std::string>());
    if (!kind) throw ConfigError("unknown generator_kind");
    c.generator_kind = *kind;
  }
  if (j.contains("gen")) {
    const json& g = j.at("gen");
    read_field(g, "max_new_tokens", c.gen.max_new_tokens);
    read_field(g, "reasoning_max_new_tokens", c.gen.reasoning_max_new_tokens);
    read_field(g, "temperature", c.gen.temperature);
    read_field(g, "n_samples", c.gen.n_samples);
  }
  if (j.contains("plan")) {
    const json& p = j.at("plan");
    read_field(p, "executability_check", c.plan.executability_check);
    if (p.contains("discriminator")) {
      const json& d = p.at("discriminator");
      if (d.contains("kind")) {
        auto kind = parse_model_kind(d.at("kind").get<std::string>());
        if (!kind) throw ConfigError("unknown discriminator kind");
        c.plan.discriminator.kind = *kind;
      }
      if (d.contains("scoring")) {
        auto scoring = parse_scoring_mode(d.at("scoring").get<std::string>());
        if (!scoring) throw ConfigError("unknown scoring mode");
        c.plan.discriminator.scoring = *scoring;
      }
      read_field(d, "schema_in_prompt", c.plan.discriminator.schema_in_prompt);
      read_field(d, "max_new_tokens", c.plan.discriminator.max_new_tokens);
      read_field(d, "temperature", c.plan.discriminator.temperature);
    }
  }
  read_field(j, "candidates_path", c.candidates_path);
  if (j.contains("budget_list")) c.budget_list = j.at("budget_list").get<std::vector<int>>();
  read_field(j, "quality_input", c.quality_input);
  read_field(j, "oracle_top_k", c.oracle_top_k);
  read_field(j, "oracle_threshold", c.oracle_threshold);
  read_field(j, "exec_timeout_ms", c.exec_timeout_ms);
  read_field(j, "exec_row_cap", c.exec_row_cap);
  read_field(j, "macro_f1_threshold", c.macro_f1_threshold);
  read_field(j, "output_dir", c.output_dir);
  read_field(j, "template_dir", c.template_dir);
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace sqlplan
