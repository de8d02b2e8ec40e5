#include "sqlplan/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "sqlplan/sql_match.hpp"
#include "sqlplan/util.hpp"

namespace sqlplan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json quality_to_json(const std::optional<ReasoningQualityReport>& q) {
  if (!q) return nullptr;
  json out = {
      {"repetition_ratio", q->repetition_ratio},
      {"one_minus_ttr", q->one_minus_ttr},
      {"repeated_ngrams", q->repeated_ngrams},
      {"entropy", q->entropy},
  };
  out["diversity"] = q->diversity ? json(*q->diversity) : json(nullptr);
  return out;
}

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json intrinsic_to_json(const IntrinsicReport& r) {
  return json{
      {"pw_acc", optional_to_json(r.pw_acc)},
      {"macro_f1", optional_to_json(r.macro_f1)},
      {"hit_at_1", optional_to_json(r.hit_at_1)},
      {"mrr", optional_to_json(r.mrr)},
      {"fail_rate", optional_to_json(r.fail_rate)},
  };
}

std::string fmt_cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

constexpr const char* kIntrinsicCsvHeader =
    "budget,pw_acc,f1,hit_at_1,mrr,fail_rate,"
    "repetition_ratio,one_minus_ttr,repeated_ngrams,entropy,diversity";

std::string intrinsic_csv_row(int budget, const IntrinsicReport& r,
                              const std::optional<ReasoningQualityReport>& q) {
  std::ostringstream row;
  row << budget << ',' << fmt_cell(r.pw_acc) << ',' << fmt_cell(r.macro_f1) << ','
      << fmt_cell(r.hit_at_1) << ',' << fmt_cell(r.mrr) << ',' << fmt_cell(r.fail_rate) << ',';
  if (q) {
    row << fmt_cell(q->repetition_ratio) << ',' << fmt_cell(q->one_minus_ttr) << ','
        << fmt_cell(q->repeated_ngrams) << ',' << fmt_cell(q->entropy) << ','
        << fmt_cell(q->diversity);
  } else {
    row << ",,,,";
  }
  return row.str();
}

json score_to_json(const DiscriminationScore& s) {
  return json{{"value", s.value}, {"failed", s.failed}};
}

json cell_to_json(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return nullptr;
  if (std::holds_alternative<std::int64_t>(cell)) return std::get<std::int64_t>(cell);
  if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
  return std::get<std::string>(cell);
}

/// Typed row arrays for run records: {status, correct, rows|error}.
json execution_to_json(const ExecOutcome& outcome, bool correct) {
  json out = {{"status", to_string(outcome.status)}, {"correct", correct}};
  if (outcome.status == ExecStatus::ok) {
    json rows = json::array();
    for (const auto& row : outcome.rows) {
      json cells = json::array();
      for (const auto& cell : row) cells.push_back(cell_to_json(cell));
      rows.push_back(std::move(cells));
    }
    out["rows"] = std::move(rows);
  } else if (outcome.status == ExecStatus::exec_error) {
    out["error"] = outcome.error_text;
  }
  return out;
}

json parse_to_json(const std::optional<ReasoningParse>& p) {
  if (!p) return nullptr;
  json out = {
      {"verdict", to_string(p->verdict)},
      {"truncated", p->truncated},
      {"reasoning_text", p->reasoning_text},
  };
  out["true_logprob"] = p->true_logprob ? json(*p->true_logprob) : json(nullptr);
  out["false_logprob"] = p->false_logprob ? json(*p->false_logprob) : json(nullptr);
  return out;
}

struct LoadedDataset {
  std::vector<TaskExample> examples;  // id-sorted
  std::map<std::string, DbSchema> schemas;
};

LoadedDataset load_dataset(const ExperimentConfig& config) {
  LoadedDataset data;
  LoadOptions options;
  options.difficulty_sidecar_path = config.difficulty_path;
  options.db_root = config.db_root;
  data.examples = load_examples(config.examples_path, options);
  data.schemas = load_schemas(config.tables_path);
  if (config.n_per_tier > 0) {
    data.examples = sample_balanced(data.examples, config.n_per_tier, config.seed);
  }
  std::sort(data.examples.begin(), data.examples.end(),
            [](const TaskExample& a, const TaskExample& b) { return a.id < b.id; });
  for (const auto& ex : data.examples) {
    if (!data.schemas.count(ex.db_id)) {
      throw LoadError("example " + ex.id + ": db_id '" + ex.db_id + "' missing from tables file");
    }
  }
  return data;
}

TemplateSet load_templates(const ExperimentConfig& config) {
  return config.template_dir.empty() ? TemplateSet::builtin()
                                     : TemplateSet::from_dir(config.template_dir);
}

json make_snapshot(const ExperimentConfig& config, const TemplateSet& templates,
                   const std::string& started_at) {
  return json{
      {"config", config_to_json(config)},
      {"harness_version", kHarnessVersion},
      {"started_at", started_at},
      {"finished_at", iso8601_now()},
      {"notes",
       {{"generation_budget_semantics", "max_new_tokens counts newly generated tokens only"},
        {"reasoning_generation_budget",
         "reasoning-kind generation uses gen.reasoning_max_new_tokens; the non-reasoning "
         "default stays at 300"},
        {"soft_scores",
         "two-way renormalization of the {true,false} (or {Yes,No}) logprob pair; "
         "order- and ratio-preserving against a full-vocabulary softmax"},
        {"unextractable_candidates",
         "scored with the -0.5 sentinel and counted in the failure rate"},
        {"no_eligible_candidate", "planner returns no final query; counted incorrect end-to-end"},
        {"oracle_row_order", "top-k truncation uses engine-returned row order"}}},
      {"templates",
       {{"version", templates.version},
        {"gen_reasoning", templates.gen_reasoning},
        {"gen_nonreasoning", templates.gen_nonreasoning},
        {"disc_nonreasoning", templates.disc_nonreasoning},
        {"disc_reasoning", templates.disc_reasoning},
        {"disc_reasoning_schema", templates.disc_reasoning_schema}}},
  };
}

/// Per-example intrinsic evaluation result.
struct IntrinsicExample {
  json record;
  std::vector<std::pair<double, double>> pairs;  // (correct, incorrect) scores
  std::vector<LabeledScore> labeled;
  LabeledBatch labeled_batch;
  std::vector<DiscriminationScore> attempted;  // scores of actual discriminator calls
  std::vector<std::string> traces;             // reasoning texts, candidate order
};

struct IntrinsicOutcome {
  IntrinsicReport report;
  std::optional<ReasoningQualityReport> quality;
  std::vector<json> records;
  json counts;
};

IntrinsicOutcome evaluate_intrinsic(
    const ExperimentConfig& config, const LoadedDataset& data, const TemplateSet& templates,
    const std::map<std::string, std::vector<CandidateSql>>& artifact, int budget) {
  DiscriminatorConfig disc = config.plan.discriminator;
  disc.max_new_tokens = budget;
  disc.validate();
  ExecLimits limits = config.exec_limits();

  for (const auto& ex : data.examples) {
    if (!artifact.count(ex.id)) {
      throw LoadError("candidate artifact has no record for example " + ex.id);
    }
  }

  std::vector<IntrinsicExample> results(data.examples.size());
  parallel_for_indexed(data.examples.size(), config.concurrency, [&](std::size_t idx) {
    const TaskExample& ex = data.examples[idx];
    const DbSchema& schema = data.schemas.at(ex.db_id);
    std::string db_path = db_path_for(config.db_root, ex.db_id);
    // Each worker uses its own backend client (mock replay is pure; live
    // clients are one connection each).
    auto backend = make_backend(config.backend, config.backend_model);

    CandidateBatch batch;
    batch.example_id = ex.id;
    batch.candidates = artifact.at(ex.id);

    ExecOutcome gold = execute(db_path, ex.gold_sql, limits);

    IntrinsicExample& result = results[idx];
    std::vector<OracleLabel> oracle(batch.candidates.size());
    std::vector<std::optional<bool>> executable;
    std::vector<DiscriminationScore> scores(batch.candidates.size(),
                                            DiscriminationScore::fallback());
    std::vector<bool> eligibility(batch.candidates.size(), false);
    std::vector<std::optional<ReasoningParse>> parses(batch.candidates.size());
    std::vector<bool> scored(batch.candidates.size(), false);
    std::vector<std::optional<std::string>> prompts(batch.candidates.size());

    if (config.plan.executability_check) {
      executable.resize(batch.candidates.size());
      for (std::size_t i = 0; i < batch.candidates.size(); ++i) {
        executable[i] = batch.candidates[i].extraction_ok
                            ? is_executable(db_path, batch.candidates[i].extracted_sql, limits)
                            : false;
      }
    }

    for (std::size_t i = 0; i < batch.candidates.size(); ++i) {
      const CandidateSql& candidate = batch.candidates[i];
      oracle[i] = candidate.extraction_ok
                      ? oracle_label_with_gold(db_path, *candidate.extracted_sql, gold,
                                               static_cast<std::size_t>(config.oracle_top_k),
                                               config.oracle_threshold, limits)
                      : OracleLabel{false, 0.0};
      bool scoreable = candidate.extraction_ok;
      if (config.plan.executability_check) scoreable = scoreable && *executable[i];
      eligibility[i] = scoreable;
      if (!scoreable) continue;
      prompts[i] = build_discrimination_prompt(
          ex.question, *candidate.extracted_sql,
          disc.schema_in_prompt ? &schema : nullptr, disc.kind, templates);
      auto outcome = discriminate(*backend, ex.question, candidate, &schema, disc, templates);
      scores[i] = outcome.score;
      parses[i] = std::move(outcome.parse);
      scored[i] = true;
      result.attempted.push_back(scores[i]);
    }

    RankedBatch ranked = rerank(batch, scores, eligibility, executable);

    // Metric inputs.
    for (std::size_t i = 0; i < batch.candidates.size(); ++i) {
      result.labeled.push_back(LabeledScore{scores[i], oracle[i].correct});
      if (parses[i]) result.traces.push_back(parses[i]->reasoning_text);
    }
    for (std::size_t i = 0; i < batch.candidates.size(); ++i) {
      if (!oracle[i].correct) continue;
      for (std::size_t j = 0; j < batch.candidates.size(); ++j) {
        if (oracle[j].correct) continue;
        result.pairs.emplace_back(scores[i].value, scores[j].value);
      }
    }
    result.labeled_batch.batch = ranked;
    for (const auto& label : oracle) {
      result.labeled_batch.oracle_by_gen_index.push_back(label.correct);
    }

    // Per-example record.
    json candidates_json = json::array();
    for (std::size_t i = 0; i < batch.candidates.size(); ++i) {
      const CandidateSql& c = batch.candidates[i];
      json entry = {
          {"index", i},
          {"raw_output", c.raw_output},
          {"extracted_sql", c.extracted_sql ? json(*c.extracted_sql) : json(nullptr)},
          {"extraction_ok", c.extraction_ok},
          {"oracle", {{"correct", oracle[i].correct}, {"overlap", oracle[i].overlap}}},
          {"executable",
           executable.empty() ? json(nullptr) : json(*executable[i])},
          {"scored", scored[i]},
          {"discrimination_prompt", prompts[i] ? json(*prompts[i]) : json(nullptr)},
          {"score", score_to_json(scores[i])},
          {"parse", parse_to_json(parses[i])},
      };
      candidates_json.push_back(std::move(entry));
    }
    json order = json::array();
    for (const auto& entry : ranked.entries) order.push_back(entry.gen_index);
    result.record = {
        {"example_id", ex.id},
        {"db_id", ex.db_id},
        {"difficulty", to_string(ex.difficulty)},
        {"question", ex.question},
        {"gold_sql", ex.gold_sql},
        {"candidates", std::move(candidates_json)},
        {"ranking",
         {{"order", std::move(order)},
          {"chosen_gen_index",
           ranked.chosen_index ? json(ranked.entries[*ranked.chosen_index].gen_index)
                               : json(nullptr)}}},
    };
  });

  // Deterministic aggregation in example-id order.
  IntrinsicOutcome out;
  std::vector<std::pair<double, double>> pairs;
  std::vector<LabeledScore> labeled;
  std::vector<LabeledBatch> batches;
  std::vector<DiscriminationScore> attempted;
  std::vector<ReasoningQualityReport> trace_quality;
  TfidfEmbedder embedder;
  for (auto& result : results) {
    pairs.insert(pairs.end(), result.pairs.begin(), result.pairs.end());
    labeled.insert(labeled.end(), result.labeled.begin(), result.labeled.end());
    batches.push_back(std::move(result.labeled_batch));
    attempted.insert(attempted.end(), result.attempted.begin(), result.attempted.end());
    for (const auto& trace : result.traces) {
      trace_quality.push_back(quality_of_trace(trace, embedder));
    }
    out.records.push_back(std::move(result.record));
  }
  out.report.pw_acc = pairwise_accuracy(pairs);
  out.report.macro_f1 = labeled.empty()
                            ? std::nullopt
                            : macro_f1(labeled, config.macro_f1_threshold);
  out.report.hit_at_1 = batches.empty() ? std::optional<double>() : hit_at_1(batches);
  out.report.mrr = batches.empty() ? std::optional<double>() : mrr(batches);
  // Candidates that never reached the discriminator (unextractable, or
  // filtered by the executability check) carry the sentinel and count as
  // failures alongside unparseable completions.
  std::vector<DiscriminationScore> all_scores;
  all_scores.reserve(labeled.size());
  for (const auto& item : labeled) all_scores.push_back(item.score);
  out.report.fail_rate = failure_rate(all_scores);
  if (config.plan.discriminator.kind == ModelKind::reasoning) {
    out.quality = mean_quality(trace_quality);
  }
  out.counts = {
      {"examples", data.examples.size()},
      {"candidates", labeled.size()},
      {"discriminator_calls", attempted.size()},
      {"pairs", pairs.size()},
      {"traces", trace_quality.size()},
  };
  return out;
}

}  // namespace

std::string persist_run(const RunRecord& record, const std::string& output_dir) {
  fs::path dir(output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RunError("cannot create run directory " + output_dir + ": " + ec.message());

  fs::path marker = dir / "_INCOMPLETE";
  write_file(marker.string(), "run in progress; presence of this file marks an invalid run\n");

  write_file((dir / "config.snapshot").string(), record.config_snapshot.dump(2) + "\n");
  std::string jsonl;
  for (const auto& rec : record.records) {
    jsonl += rec.dump();
    jsonl += '\n';
  }
  write_file((dir / "records.jsonl").string(), jsonl);
  write_file((dir / "report.json").string(), record.report.dump(2) + "\n");
  write_file((dir / "report.csv").string(), record.report_csv);

  fs::remove(marker, ec);
  if (ec) throw RunError("cannot finalize run directory " + output_dir + ": " + ec.message());
  return dir.string();
}

std::map<std::string, std::vector<CandidateSql>> load_candidate_artifact(
    const std::string& path) {
  std::map<std::string, std::vector<CandidateSql>> out;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw LoadError("candidate artifact " + path + " line " + std::to_string(line_no) + ": " +
                      e.what());
    }
    if (!rec.contains("example_id") || !rec.contains("candidates"))
      throw LoadError("candidate artifact " + path + " line " + std::to_string(line_no) +
                      ": need example_id and candidates");
    std::vector<CandidateSql> candidates;
    for (const json& c : rec["candidates"]) {
      CandidateSql candidate;
      candidate.raw_output = c.value("raw_output", std::string());
      if (c.contains("extracted_sql") && !c["extracted_sql"].is_null()) {
        candidate.extracted_sql = c["extracted_sql"].get<std::string>();
      }
      candidate.extraction_ok = c.value("extraction_ok", false);
      if (candidate.extraction_ok &&
          (!candidate.extracted_sql || !starts_with_ci(trim(*candidate.extracted_sql), "select"))) {
        throw LoadError("candidate artifact " + path + " line " + std::to_string(line_no) +
                        ": extraction_ok candidate without a SELECT extraction");
      }
      candidates.push_back(std::move(candidate));
    }
    out[rec["example_id"].get<std::string>()] = std::move(candidates);
  }
  if (out.empty()) throw LoadError("candidate artifact " + path + " holds no records");
  return out;
}

std::string candidate_artifact_to_jsonl(
    const std::vector<std::pair<std::string, std::vector<CandidateSql>>>& batches) {
  std::string out;
  for (const auto& [example_id, candidates] : batches) {
    json rec = {{"example_id", example_id}, {"candidates", json::array()}};
    for (const auto& c : candidates) {
      rec["candidates"].push_back({
          {"raw_output", c.raw_output},
          {"extracted_sql", c.extracted_sql ? json(*c.extracted_sql) : json(nullptr)},
          {"extraction_ok", c.extraction_ok},
      });
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

RunRecord run_generate(const ExperimentConfig& config) {
  config.validate();
  std::string started = iso8601_now();
  TemplateSet templates = load_templates(config);
  LoadedDataset data = load_dataset(config);

  CompletionRequest params;
  params.max_new_tokens = config.generator_kind == ModelKind::reasoning
                              ? config.gen.reasoning_max_new_tokens
                              : config.gen.max_new_tokens;
  params.temperature = config.gen.temperature;
  params.n_samples = config.gen.n_samples;

  std::vector<CandidateBatch> batches(data.examples.size());
  parallel_for_indexed(data.examples.size(), config.concurrency, [&](std::size_t idx) {
    auto backend = make_backend(config.backend, config.backend_model);
    const TaskExample& ex = data.examples[idx];
    batches[idx] = generate_candidates(*backend, ex, data.schemas.at(ex.db_id),
                                       config.generator_kind, params, templates);
  });

  RunRecord record;
  record.config_snapshot = make_snapshot(config, templates, started);
  std::size_t total = 0, ok = 0;
  std::vector<std::pair<std::string, std::vector<CandidateSql>>> artifact;
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const TaskExample& ex = data.examples[i];
    json candidates_json = json::array();
    for (const auto& c : batches[i].candidates) {
      ++total;
      ok += c.extraction_ok ? 1 : 0;
      candidates_json.push_back({
          {"raw_output", c.raw_output},
          {"extracted_sql", c.extracted_sql ? json(*c.extracted_sql) : json(nullptr)},
          {"extraction_ok", c.extraction_ok},
      });
    }
    record.records.push_back(json{
        {"example_id", ex.id},
        {"db_id", ex.db_id},
        {"difficulty", to_string(ex.difficulty)},
        {"generation_prompt",
         build_generation_prompt(ex, data.schemas.at(ex.db_id), config.generator_kind, templates)},
        {"candidates", std::move(candidates_json)},
    });
    artifact.emplace_back(ex.id, batches[i].candidates);
  }
  record.report = {
      {"mode", "generate"},
      {"counts", {{"examples", data.examples.size()}, {"candidates", total}, {"extraction_ok", ok}}},
  };
  record.report_csv = "examples,candidates,extraction_ok\n" +
                      std::to_string(data.examples.size()) + "," + std::to_string(total) + "," +
                      std::to_string(ok) + "\n";
  if (!config.output_dir.empty()) {
    persist_run(record, config.output_dir);
    write_file((fs::path(config.output_dir) / "candidates.jsonl").string(),
               candidate_artifact_to_jsonl(artifact));
  }
  return record;
}

RunRecord run_intrinsic(const ExperimentConfig& config) {
  config.validate();
  std::string started = iso8601_now();
  TemplateSet templates = load_templates(config);
  LoadedDataset data = load_dataset(config);
  auto artifact = load_candidate_artifact(config.candidates_path);

  IntrinsicOutcome outcome = evaluate_intrinsic(config, data, templates, artifact,
                                                config.plan.discriminator.max_new_tokens);

  RunRecord record;
  record.config_snapshot = make_snapshot(config, templates, started);
  record.records = std::move(outcome.records);
  record.report = {
      {"mode", "intrinsic"},
      {"intrinsic", intrinsic_to_json(outcome.report)},
      {"quality", quality_to_json(outcome.quality)},
      {"counts", outcome.counts},
  };
  record.report_csv =
      std::string(kIntrinsicCsvHeader) + "\n" +
      intrinsic_csv_row(config.plan.discriminator.max_new_tokens, outcome.report,
                        outcome.quality) +
      "\n";
  if (!config.output_dir.empty()) persist_run(record, config.output_dir);
  return record;
}

RunRecord run_end_to_end(const ExperimentConfig& config) {
  config.validate();
  std::string started = iso8601_now();
  TemplateSet templates = load_templates(config);
  LoadedDataset data = load_dataset(config);
  ExecLimits limits = config.exec_limits();

  CompletionRequest params;
  params.max_new_tokens = config.generator_kind == ModelKind::reasoning
                              ? config.gen.reasoning_max_new_tokens
                              : config.gen.max_new_tokens;
  params.temperature = config.gen.temperature;
  params.n_samples = config.gen.n_samples;

  std::vector<PlanOutcome> outcomes(data.examples.size());
  parallel_for_indexed(data.examples.size(), config.concurrency, [&](std::size_t idx) {
    auto backend = make_backend(config.backend, config.backend_model);
    const TaskExample& ex = data.examples[idx];
    outcomes[idx] =
        plan_example(*backend, ex, data.schemas.at(ex.db_id),
                     db_path_for(config.db_root, ex.db_id), config.plan, config.generator_kind,
                     params, limits, templates);
  });

  // Aggregate metrics in example order.
  std::vector<EndToEndCase> cases;
  std::vector<std::optional<std::string>> preds;
  std::vector<std::string> golds;
  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    cases.push_back(EndToEndCase{data.examples[i], outcomes[i].final_sql});
    preds.push_back(outcomes[i].final_sql);
    golds.push_back(data.examples[i].gold_sql);
  }
  TierAccuracyReport exec_report = execution_accuracy_report(cases, config.db_root, limits);
  PartialMatchReport partial = partial_match(preds, golds);
  std::size_t exact_hits = 0;
  std::vector<bool> exact_flags(data.examples.size(), false);
  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    exact_flags[i] = preds[i] && exact_match(*preds[i], golds[i]);
    exact_hits += exact_flags[i] ? 1 : 0;
  }
  double exact_pct = data.examples.empty()
                         ? 0.0
                         : 100.0 * static_cast<double>(exact_hits) /
                               static_cast<double>(data.examples.size());

  RunRecord record;
  record.config_snapshot = make_snapshot(config, templates, started);
  json tier_json;
  for (int t = 0; t < kDifficultyCount; ++t) {
    auto tier = static_cast<Difficulty>(t);
    auto it = exec_report.per_tier.find(tier);
    tier_json[to_string(tier)] = it == exec_report.per_tier.end() ? json(nullptr) : json(it->second);
  }
  tier_json["overall"] = exec_report.overall;
  record.report = {
      {"mode", "e2e"},
      {"execution_accuracy", tier_json},
      {"exact_match", exact_pct},
      {"partial_match",
       {{"acc", partial.acc}, {"recall", partial.recall}, {"f1", partial.f1}}},
      {"counts", {{"examples", data.examples.size()}}},
  };

  auto pct = [](const TierAccuracyReport& r, Difficulty tier) -> std::optional<double> {
    auto it = r.per_tier.find(tier);
    if (it == r.per_tier.end()) return std::nullopt;
    return it->second;
  };
  std::ostringstream csv;
  csv << "exec_acc_easy,exec_acc_medium,exec_acc_hard,exec_acc_extra,exec_acc_all,"
         "exact_match,partial_acc,partial_recall,partial_f1\n";
  csv << fmt_cell(pct(exec_report, Difficulty::easy)) << ','
      << fmt_cell(pct(exec_report, Difficulty::medium)) << ','
      << fmt_cell(pct(exec_report, Difficulty::hard)) << ','
      << fmt_cell(pct(exec_report, Difficulty::extra)) << ',' << fmt_cell(exec_report.overall)
      << ',' << fmt_cell(exact_pct) << ',' << fmt_cell(partial.acc) << ','
      << fmt_cell(partial.recall) << ',' << fmt_cell(partial.f1) << "\n";
  record.report_csv = csv.str();

  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    const TaskExample& ex = data.examples[i];
    const PlanOutcome& outcome = outcomes[i];

    json execution = nullptr;
    if (outcome.final_sql) {
      std::string db_path = db_path_for(config.db_root, ex.db_id);
      ExecOutcome chosen = execute(db_path, *outcome.final_sql, limits);
      bool correct = chosen.status == ExecStatus::ok &&
                     compare_execution(chosen, execute(db_path, ex.gold_sql, limits),
                                       has_order_by(ex.gold_sql));
      execution = execution_to_json(chosen, correct);
    }

    json candidates_json = json::array();
    // Entries carry the ranked view; records keep generation order.
    std::vector<const RankedEntry*> by_gen(outcome.batch.entries.size(), nullptr);
    for (const auto& entry : outcome.batch.entries) by_gen[entry.gen_index] = &entry;
    for (std::size_t g = 0; g < by_gen.size(); ++g) {
      const RankedEntry* entry = by_gen[g];
      if (!entry) continue;
      candidates_json.push_back({
          {"index", g},
          {"raw_output", entry->candidate.raw_output},
          {"extracted_sql",
           entry->candidate.extracted_sql ? json(*entry->candidate.extracted_sql) : json(nullptr)},
          {"extraction_ok", entry->candidate.extraction_ok},
          {"executable", entry->executable ? json(*entry->executable) : json(nullptr)},
          {"score", score_to_json(entry->score)},
          {"parse", g < outcome.parses.size() ? parse_to_json(outcome.parses[g]) : json(nullptr)},
      });
    }
    json order = json::array();
    for (const auto& entry : outcome.batch.entries) order.push_back(entry.gen_index);
    record.records.push_back(json{
        {"example_id", ex.id},
        {"db_id", ex.db_id},
        {"difficulty", to_string(ex.difficulty)},
        {"question", ex.question},
        {"gold_sql", ex.gold_sql},
        {"generation_prompt",
         build_generation_prompt(ex, data.schemas.at(ex.db_id), config.generator_kind, templates)},
        {"candidates", std::move(candidates_json)},
        {"ranking",
         {{"order", std::move(order)},
          {"chosen_gen_index", outcome.batch.chosen_index
                                   ? json(outcome.batch.entries[*outcome.batch.chosen_index].gen_index)
                                   : json(nullptr)}}},
        {"chosen_sql", outcome.final_sql ? json(*outcome.final_sql) : json(nullptr)},
        {"execution", std::move(execution)},
        {"exact_match", exact_flags[i]},
        {"discriminator_calls", outcome.discriminator_calls},
    });
  }
  if (!config.output_dir.empty()) persist_run(record, config.output_dir);
  return record;
}

RunRecord run_budget_sweep(const ExperimentConfig& config) {
  config.validate();
  std::string started = iso8601_now();
  TemplateSet templates = load_templates(config);
  LoadedDataset data = load_dataset(config);
  auto artifact = load_candidate_artifact(config.candidates_path);

  RunRecord record;
  json rows = json::array();
  std::string csv = std::string(kIntrinsicCsvHeader) + "\n";
  for (int budget : config.budget_list) {
    ExperimentConfig per_budget = config;
    per_budget.plan.discriminator.max_new_tokens = budget;
    IntrinsicOutcome outcome =
        evaluate_intrinsic(per_budget, data, templates, artifact, budget);
    rows.push_back(json{
        {"budget", budget},
        {"intrinsic", intrinsic_to_json(outcome.report)},
        {"quality", quality_to_json(outcome.quality)},
        {"counts", outcome.counts},
    });
    csv += intrinsic_csv_row(budget, outcome.report, outcome.quality) + "\n";
    for (auto& rec : outcome.records) {
      rec["budget"] = budget;
      record.records.push_back(std::move(rec));
    }
  }
  record.config_snapshot = make_snapshot(config, templates, started);
  record.report = {{"mode", "sweep"}, {"rows", std::move(rows)}};
  record.report_csv = std::move(csv);
  if (!config.output_dir.empty()) persist_run(record, config.output_dir);
  return record;
}

RunRecord run_quality(const ExperimentConfig& config) {
  config.validate();
  std::string started = iso8601_now();
  TemplateSet templates = load_templates(config);

  std::istringstream in(read_file(config.quality_input));
  std::string line;
  TfidfEmbedder embedder;
  std::vector<ReasoningQualityReport> traces;
  RunRecord record;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw LoadError("quality input line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.contains("candidates")) continue;
    for (std::size_t i = 0; i < rec["candidates"].size(); ++i) {
      const json& c = rec["candidates"][i];
      if (!c.contains("parse") || c["parse"].is_null()) continue;
      const json& parse = c["parse"];
      if (!parse.contains("reasoning_text")) continue;
      std::string text = parse["reasoning_text"].get<std::string>();
      ReasoningQualityReport q = quality_of_trace(text, embedder);
      traces.push_back(q);
      record.records.push_back(json{
          {"example_id", rec.value("example_id", std::string())},
          {"candidate_index", i},
          {"quality", quality_to_json(q)},
      });
    }
  }
  auto aggregate = mean_quality(traces);

  record.config_snapshot = make_snapshot(config, templates, started);
  record.report = {
      {"mode", "quality"},
      {"quality", quality_to_json(aggregate)},
      {"counts", {{"traces", traces.size()}}},
  };
  std::ostringstream csv;
  csv << "repetition_ratio,one_minus_ttr,repeated_ngrams,entropy,diversity\n";
  if (aggregate) {
    csv << fmt_cell(aggregate->repetition_ratio) << ',' << fmt_cell(aggregate->one_minus_ttr)
        << ',' << fmt_cell(aggregate->repeated_ngrams) << ',' << fmt_cell(aggregate->entropy)
        << ',' << fmt_cell(aggregate->diversity) << "\n";
  }
  record.report_csv = csv.str();
  if (!config.output_dir.empty()) persist_run(record, config.output_dir);
  return record;
}

RunRecord run_experiment(const ExperimentConfig& config) {
  switch (config.mode) {
    case RunMode::generate: return run_generate(config);
    case RunMode::intrinsic: return run_intrinsic(config);
    case RunMode::e2e: return run_end_to_end(config);
    case RunMode::sweep: return run_budget_sweep(config);
    case RunMode::quality: return run_quality(config);
  }
  throw ConfigError("unknown run mode");
}

}  // namespace sqlplan
