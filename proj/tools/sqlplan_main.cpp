// Command-line entry point for the text-to-SQL planning benchmark harness.
//
// Subcommands: generate, intrinsic, e2e, sweep, quality. Flags override the
// optional --config JSON file field by field.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "sqlplan/config.hpp"
#include "sqlplan/harness.hpp"
#include "sqlplan/util.hpp"

namespace {

using namespace sqlplan;

struct CliOverrides {
  std::string config_path;
  std::string backend, backend_model;
  std::string examples, tables, db_root, difficulty, candidates, quality_input;
  std::string out, templates;
  std::string budgets;  // comma-separated
  std::string schema_context, scoring, exec_check;
  std::string generator_kind, discriminator_kind;
  int seed = -1;
  int n_per_tier = -1;
  int concurrency = -1;
  int disc_budget = -1;
  int n_samples = -1;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file (flags override it)");
  cmd->add_option("--backend", o.backend, "mock:<fixture path> or completions endpoint URL");
  cmd->add_option("--model", o.backend_model, "model name passed to a live backend");
  cmd->add_option("--examples", o.examples, "Spider-format examples file");
  cmd->add_option("--tables", o.tables, "Spider tables file");
  cmd->add_option("--db-root", o.db_root, "database directory root (<root>/<db>/<db>.sqlite)");
  cmd->add_option("--difficulty", o.difficulty, "difficulty sidecar (index<TAB>tier)");
  cmd->add_option("--candidates", o.candidates, "pre-generated candidate artifact (jsonl)");
  cmd->add_option("--quality-input", o.quality_input, "records.jsonl of a previous run");
  cmd->add_option("--budget", o.budgets, "token budget list, comma separated");
  cmd->add_option("--disc-budget", o.disc_budget, "discriminator max_new_tokens");
  cmd->add_option("--schema-context", o.schema_context, "on|off: schema in discrimination prompt");
  cmd->add_option("--scoring", o.scoring, "soft|binary");
  cmd->add_option("--exec-check", o.exec_check, "on|off: executability filter before ranking");
  cmd->add_option("--seed", o.seed, "sampling seed");
  cmd->add_option("--n-per-tier", o.n_per_tier, "balanced subset size per difficulty tier");
  cmd->add_option("--n-samples", o.n_samples, "candidates sampled per example");
  cmd->add_option("--generator-kind", o.generator_kind, "reasoning|non_reasoning");
  cmd->add_option("--discriminator-kind", o.discriminator_kind, "reasoning|non_reasoning");
  cmd->add_option("--concurrency", o.concurrency, "max in-flight backend requests");
  cmd->add_option("--templates", o.templates, "prompt template directory (default: built-in)");
  cmd->add_option("--out", o.out, "run output directory");
}

bool parse_on_off(const std::string& value, const char* flag) {
  std::string l = to_lower(trim(value));
  if (l == "on" || l == "true" || l == "1") return true;
  if (l == "off" || l == "false" || l == "0") return false;
  throw ConfigError(std::string(flag) + " must be on or off");
}

ExperimentConfig assemble(RunMode mode, const CliOverrides& o) {
  ExperimentConfig config;
  if (!o.config_path.empty()) config = load_config_file(o.config_path);
  config.mode = mode;
  if (!o.backend.empty()) config.backend = o.backend;
  if (!o.backend_model.empty()) config.backend_model = o.backend_model;
  if (!o.examples.empty()) config.examples_path = o.examples;
  if (!o.tables.empty()) config.tables_path = o.tables;
  if (!o.db_root.empty()) config.db_root = o.db_root;
  if (!o.difficulty.empty()) config.difficulty_path = o.difficulty;
  if (!o.candidates.empty()) config.candidates_path = o.candidates;
  if (!o.quality_input.empty()) config.quality_input = o.quality_input;
  if (!o.out.empty()) config.output_dir = o.out;
  if (!o.templates.empty()) config.template_dir = o.templates;
  if (o.seed >= 0) config.seed = static_cast<std::uint64_t>(o.seed);
  if (o.n_per_tier >= 0) config.n_per_tier = o.n_per_tier;
  if (o.concurrency >= 1) config.concurrency = o.concurrency;
  if (o.n_samples >= 1) config.gen.n_samples = o.n_samples;
  if (o.disc_budget >= 1) config.plan.discriminator.max_new_tokens = o.disc_budget;
  if (!o.budgets.empty()) {
    config.budget_list.clear();
    for (const auto& piece : split(o.budgets, ',')) {
      if (trim(piece).empty()) continue;
      config.budget_list.push_back(std::stoi(trim(piece)));
    }
  }
  if (!o.schema_context.empty())
    config.plan.discriminator.schema_in_prompt = parse_on_off(o.schema_context, "--schema-context");
  if (!o.exec_check.empty())
    config.plan.executability_check = parse_on_off(o.exec_check, "--exec-check");
  if (!o.scoring.empty()) {
    auto scoring = parse_scoring_mode(o.scoring);
    if (!scoring) throw ConfigError("--scoring must be soft or binary");
    config.plan.discriminator.scoring = *scoring;
  }
  if (!o.generator_kind.empty()) {
    auto kind = parse_model_kind(o.generator_kind);
    if (!kind) throw ConfigError("--generator-kind must be reasoning or non_reasoning");
    config.generator_kind = *kind;
  }
  if (!o.discriminator_kind.empty()) {
    auto kind = parse_model_kind(o.discriminator_kind);
    if (!kind) throw ConfigError("--discriminator-kind must be reasoning or non_reasoning");
    config.plan.discriminator.kind = *kind;
  }
  return config;
}

void print_summary(const RunRecord& record) {
  const auto& report = record.report;
  std::string mode = report.value("mode", std::string());
  auto show = [](const char* name, const nlohmann::json& v) {
    if (v.is_null()) {
      std::printf("  %-18s -\n", name);
    } else {
      std::printf("  %-18s %.2f\n", name, v.get<double>());
    }
  };
  std::printf("mode: %s\n", mode.c_str());
  if (mode == "intrinsic") {
    const auto& m = report["intrinsic"];
    show("pw_acc", m["pw_acc"]);
    show("macro_f1", m["macro_f1"]);
    show("hit_at_1", m["hit_at_1"]);
    show("mrr", m["mrr"]);
    show("fail_rate", m["fail_rate"]);
  } else if (mode == "e2e") {
    const auto& e = report["execution_accuracy"];
    for (const char* tier : {"easy", "medium", "hard", "extra", "overall"}) show(tier, e[tier]);
    show("exact_match", report["exact_match"]);
    show("partial_f1", report["partial_match"]["f1"]);
  } else if (mode == "sweep") {
    for (const auto& row : report["rows"]) {
      std::printf("  budget %-6d fail_rate ", row["budget"].get<int>());
      if (row["intrinsic"]["fail_rate"].is_null()) {
        std::printf("-\n");
      } else {
        std::printf("%.2f\n", row["intrinsic"]["fail_rate"].get<double>());
      }
    }
  } else if (mode == "quality") {
    if (!report["quality"].is_null()) {
      const auto& q = report["quality"];
      show("repetition_ratio", q["repetition_ratio"]);
      show("one_minus_ttr", q["one_minus_ttr"]);
      show("repeated_ngrams", q["repeated_ngrams"]);
      show("entropy", q["entropy"]);
      show("diversity", q["diversity"]);
    }
  } else if (mode == "generate") {
    std::printf("  candidates %zu (extraction_ok %zu)\n",
                report["counts"]["candidates"].get<std::size_t>(),
                report["counts"]["extraction_ok"].get<std::size_t>());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generator-discriminator planning harness for text-to-SQL evaluation"};
  app.require_subcommand(1);

  std::map<std::string, RunMode> modes = {
      {"generate", RunMode::generate}, {"intrinsic", RunMode::intrinsic},
      {"e2e", RunMode::e2e},           {"sweep", RunMode::sweep},
      {"quality", RunMode::quality},
  };
  std::map<std::string, CliOverrides> overrides;
  std::map<std::string, CLI::App*> commands;
  commands["generate"] = app.add_subcommand("generate", "sample and persist candidate SQL");
  commands["intrinsic"] = app.add_subcommand("intrinsic", "discrimination metrics on a candidate artifact");
  commands["e2e"] = app.add_subcommand("e2e", "full generate-discriminate-rank pipeline");
  commands["sweep"] = app.add_subcommand("sweep", "intrinsic evaluation across token budgets");
  commands["quality"] = app.add_subcommand("quality", "reasoning-quality metrics over a previous run");
  for (auto& [name, cmd] : commands) add_common_flags(cmd, overrides[name]);

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [name, cmd] : commands) {
      if (!cmd->parsed()) continue;
      ExperimentConfig config = assemble(modes.at(name), overrides.at(name));
      config.validate();
      RunRecord record = run_experiment(config);
      print_summary(record);
      if (!config.output_dir.empty()) {
        std::printf("run written to %s\n", config.output_dir.c_str());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
