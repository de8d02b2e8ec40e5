#include <algorithm>
#include <filesystem>
#include <fstream>

#include "demo_corpus.hpp"
#include "doctest.h"
#include "json.hpp"
#include "sqlplan/harness.hpp"
#include "sqlplan/util.hpp"
#include "support/test_env.hpp"

using namespace sqlplan;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::size_t line_count(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

/// Config for a committed corpus: dataset and fixture files from the fixture
/// dir, databases rebuilt into scratch.
ExperimentConfig committed_corpus_config(const std::string& name, const fs::path& scratch) {
  auto dir = test::fixture_dir(name);
  demo::write_demo_databases((scratch / "db").string());
  ExperimentConfig config;
  config.examples_path = (dir / "examples.json").string();
  config.tables_path = (dir / "tables.json").string();
  config.difficulty_path = (dir / "difficulty.tsv").string();
  config.db_root = (scratch / "db").string();
  config.backend = "mock:" + (dir / "fixture.json").string();
  config.candidates_path = (dir / "candidates.jsonl").string();
  config.generator_kind = ModelKind::reasoning;
  config.plan.discriminator.kind = ModelKind::reasoning;
  config.plan.discriminator.max_new_tokens = 1024;
  return config;
}

/// The corpus writers must still reproduce the committed fixture files; this
/// pins the corpus generator, the prompt builders and the committed bytes to
/// each other.
void check_regeneration(const std::string& name,
                        ExperimentConfig (*writer)(const std::string&)) {
  auto scratch = test::scratch_dir("regen_" + name);
  writer(scratch.string());
  for (const char* file :
       {"examples.json", "tables.json", "difficulty.tsv", "fixture.json", "candidates.jsonl"}) {
    auto committed = test::fixture_dir(name) / file;
    auto regenerated = scratch / file;
    REQUIRE(fs::exists(committed));
    CHECK_MESSAGE(read_file(committed.string()) == read_file(regenerated.string()),
                  "stale committed fixture file: ", file);
  }
}

}  // namespace

TEST_CASE("intrinsic golden run reproduces the committed report and hand-computed metrics") {
  check_regeneration("intrinsic_golden", demo::write_intrinsic_corpus);

  auto scratch = test::scratch_dir("harness_intrinsic");
  ExperimentConfig config = committed_corpus_config("intrinsic_golden", scratch);
  config.mode = RunMode::intrinsic;

  config.output_dir = (scratch / "run1").string();
  RunRecord first = run_intrinsic(config);
  config.output_dir = (scratch / "run2").string();
  run_intrinsic(config);

  // Hand-computed corpus metrics: 6 of 8 pairs, 2 of 4 hits, mean reciprocal
  // rank (1 + 1/2 + 1/2 + 1)/4, 3 fallbacks of 12 calls, macro F1 from the
  // confusion counts TP=4 FP=2 FN=0 TN=6.
  const json& m = first.report["intrinsic"];
  CHECK(m["pw_acc"].get<double>() == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(m["hit_at_1"].get<double>() == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(m["mrr"].get<double>() == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(m["fail_rate"].get<double>() == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(m["macro_f1"].get<double>() ==
        doctest::Approx(100.0 * (0.8 + 6.0 / 7.0) / 2.0).epsilon(1e-12));

  // Shared think body across all twelve scripted traces keeps the corpus
  // means equal to the per-trace values.
  const json& q = first.report["quality"];
  CHECK(q["repetition_ratio"].get<double>() == doctest::Approx(100.0 / 3.0).epsilon(1e-9));
  CHECK(q["one_minus_ttr"].get<double>() == doctest::Approx(100.0 * 6.0 / 14.0).epsilon(1e-9));
  CHECK(q["repeated_ngrams"].get<double>() == doctest::Approx(25.0).epsilon(1e-9));

  std::string report1 = read_file((scratch / "run1" / "report.json").string());
  std::string report2 = read_file((scratch / "run2" / "report.json").string());
  CHECK(report1 == report2);
  CHECK(read_file((scratch / "run1" / "records.jsonl").string()) ==
        read_file((scratch / "run2" / "records.jsonl").string()));
  CHECK(report1 ==
        read_file((test::fixture_dir("intrinsic_golden") / "golden_report.json").string()));
}

TEST_CASE("binary scoring ablation on the intrinsic golden corpus") {
  auto scratch = test::scratch_dir("harness_binary");
  ExperimentConfig config = committed_corpus_config("intrinsic_golden", scratch);
  config.mode = RunMode::intrinsic;
  config.plan.discriminator.scoring = ScoringMode::binary;
  RunRecord record = run_intrinsic(config);

  // Hand tally with 1/0/-0.5 scores: the iB and iC true-verdict ties fall to
  // the earlier (incorrect) candidate, so H@1 drops to 2/4 while the tied
  // pairs lose their wins (6/8); the confusion matrix matches soft mode.
  const json& m = record.report["intrinsic"];
  CHECK(m["pw_acc"].get<double>() == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(m["hit_at_1"].get<double>() == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(m["mrr"].get<double>() == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(m["fail_rate"].get<double>() == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(m["macro_f1"].get<double>() ==
        doctest::Approx(100.0 * (0.8 + 6.0 / 7.0) / 2.0).epsilon(1e-12));

  for (const auto& rec : record.records) {
    for (const auto& candidate : rec["candidates"]) {
      if (candidate["scored"] == false) continue;
      double value = candidate["score"]["value"].get<double>();
      CHECK((value == 1.0 || value == 0.0 || value == -0.5));
    }
  }
}

TEST_CASE("e2e golden run is deterministic and matches the committed report") {
  check_regeneration("e2e_golden", demo::write_e2e_corpus);

  auto scratch = test::scratch_dir("harness_e2e");
  ExperimentConfig config = committed_corpus_config("e2e_golden", scratch);
  config.mode = RunMode::e2e;

  config.output_dir = (scratch / "run1").string();
  RunRecord first = run_end_to_end(config);
  config.output_dir = (scratch / "run2").string();
  run_end_to_end(config);

  // Hand-labeled outcomes: correct choices on examples 0,1,3,5,7.
  const json& exec = first.report["execution_accuracy"];
  CHECK(exec["easy"].get<double>() == doctest::Approx(100.0));
  CHECK(exec["medium"].get<double>() == doctest::Approx(50.0));
  CHECK(exec["hard"].get<double>() == doctest::Approx(50.0));
  CHECK(exec["extra"].get<double>() == doctest::Approx(50.0));
  CHECK(exec["overall"].get<double>() == doctest::Approx(62.5));

  CHECK(read_file((scratch / "run1" / "report.json").string()) ==
        read_file((scratch / "run2" / "report.json").string()));
  CHECK(read_file((scratch / "run1" / "records.jsonl").string()) ==
        read_file((scratch / "run2" / "records.jsonl").string()));
  CHECK(read_file((scratch / "run1" / "report.json").string()) ==
        read_file((test::fixture_dir("e2e_golden") / "golden_report.json").string()));

  // Example 6's candidates never extract; its record shows no chosen query.
  bool found_absent = false;
  for (const auto& rec : first.records) {
    if (rec["example_id"] == "6") {
      CHECK(rec["chosen_sql"].is_null());
      CHECK(rec["ranking"]["chosen_gen_index"].is_null());
      CHECK(rec["execution"].is_null());
      found_absent = true;
    }
    if (rec["example_id"] == "0") {
      // Chosen count(*) query: typed result rows serialize into the record.
      CHECK(rec["execution"]["status"] == "ok");
      CHECK(rec["execution"]["correct"] == true);
      CHECK(rec["execution"]["rows"] == json::array({json::array({4})}));
    }
    if (rec["example_id"] == "4") {
      // Naive mode picked the invalid query; the failure is recorded.
      CHECK(rec["execution"]["status"] == "exec_error");
      CHECK(rec["execution"]["correct"] == false);
    }
  }
  CHECK(found_absent);

  // Replaying from the snapshot reproduces the report byte-identically.
  ExperimentConfig replay = config_from_json(
      json::parse(read_file((scratch / "run1" / "config.snapshot").string())));
  replay.output_dir = (scratch / "replay").string();
  run_end_to_end(replay);
  CHECK(read_file((scratch / "replay" / "report.json").string()) ==
        read_file((scratch / "run1" / "report.json").string()));
  CHECK(read_file((scratch / "replay" / "records.jsonl").string()) ==
        read_file((scratch / "run1" / "records.jsonl").string()));
}

TEST_CASE("enhanced mode dominates naive mode on the dominance corpus") {
  auto scratch = test::scratch_dir("harness_dominance");
  ExperimentConfig config = demo::write_dominance_corpus((scratch / "corpus").string());
  config.mode = RunMode::e2e;

  config.plan.executability_check = false;
  RunRecord naive = run_end_to_end(config);
  config.plan.executability_check = true;
  RunRecord enhanced = run_end_to_end(config);

  double naive_acc = naive.report["execution_accuracy"]["overall"].get<double>();
  double enhanced_acc = enhanced.report["execution_accuracy"]["overall"].get<double>();
  CHECK(naive_acc == doctest::Approx(40.0));
  CHECK(enhanced_acc == doctest::Approx(100.0));
  CHECK(enhanced_acc >= naive_acc);
}

TEST_CASE("budget sweep fail rates are monotone under the prefix-truncation mock") {
  auto scratch = test::scratch_dir("harness_sweep");
  ExperimentConfig config = demo::write_sweep_corpus((scratch / "corpus").string());
  config.output_dir = (scratch / "run").string();
  RunRecord record = run_budget_sweep(config);

  const json& rows = record.report["rows"];
  REQUIRE(rows.size() == 7);
  std::vector<double> expected_fail = {95.0, 75.0, 60.0, 35.0, 5.0, 0.0, 0.0};
  std::vector<int> budgets = {256, 400, 512, 700, 1024, 1536, 2048};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i]["budget"].get<int>() == budgets[i]);
    CHECK(rows[i]["intrinsic"]["fail_rate"].get<double>() ==
          doctest::Approx(expected_fail[i]).epsilon(1e-12));
  }
  // CSV: header plus one row per budget, in table column order.
  CHECK(line_count(record.report_csv) == 8);
  CHECK(record.report_csv.rfind("budget,pw_acc,f1,hit_at_1,mrr,fail_rate,repetition_ratio,"
                                "one_minus_ttr,repeated_ngrams,entropy,diversity\n",
                                0) == 0);

  // A single-budget sweep equals a plain intrinsic run at that budget.
  ExperimentConfig single = config;
  single.output_dir.clear();
  single.budget_list = {1024};
  RunRecord sweep_row = run_budget_sweep(single);
  ExperimentConfig intrinsic = config;
  intrinsic.mode = RunMode::intrinsic;
  intrinsic.output_dir.clear();
  intrinsic.plan.discriminator.max_new_tokens = 1024;
  RunRecord direct = run_intrinsic(intrinsic);
  CHECK(sweep_row.report["rows"][0]["intrinsic"] == direct.report["intrinsic"]);
  CHECK(sweep_row.report["rows"][0]["quality"] == direct.report["quality"]);
}

TEST_CASE("quality mode recomputes trace metrics from a run's records") {
  auto scratch = test::scratch_dir("harness_quality");
  ExperimentConfig config = demo::write_intrinsic_corpus((scratch / "corpus").string());
  config.mode = RunMode::intrinsic;
  config.output_dir = (scratch / "run").string();
  RunRecord intrinsic = run_intrinsic(config);

  ExperimentConfig quality;
  quality.mode = RunMode::quality;
  quality.quality_input = (scratch / "run" / "records.jsonl").string();
  RunRecord requality = run_quality(quality);

  CHECK(requality.report["quality"] == intrinsic.report["quality"]);
  CHECK(requality.report["counts"]["traces"].get<int>() == 12);
}

TEST_CASE("persist_run writes the documented file set") {
  auto scratch = test::scratch_dir("harness_persist");
  ExperimentConfig config = demo::write_intrinsic_corpus((scratch / "corpus").string());
  config.mode = RunMode::intrinsic;
  config.output_dir = (scratch / "out").string();
  run_intrinsic(config);

  for (const char* file : {"config.snapshot", "records.jsonl", "report.json", "report.csv"}) {
    CHECK(fs::exists(scratch / "out" / file));
  }
  CHECK_FALSE(fs::exists(scratch / "out" / "_INCOMPLETE"));

  // One record per example, sorted by example id.
  std::string records = read_file((scratch / "out" / "records.jsonl").string());
  CHECK(line_count(records) == 4);
  std::istringstream in(records);
  std::string line, prev_id;
  while (std::getline(in, line)) {
    std::string id = json::parse(line)["example_id"].get<std::string>();
    CHECK(prev_id < id);
    prev_id = id;
  }

  // Config honesty: defaults in effect are echoed into the snapshot.
  json snapshot = json::parse(read_file((scratch / "out" / "config.snapshot").string()));
  CHECK(snapshot["config"]["oracle_top_k"] == 5);
  CHECK(snapshot["config"]["oracle_threshold"] == 1.0);
  CHECK(snapshot["config"]["exec_timeout_ms"] == 5000);
  CHECK(snapshot["config"]["exec_row_cap"] == 1000);
  CHECK(snapshot["config"]["macro_f1_threshold"] == 0.5);
  CHECK(snapshot["config"]["concurrency"] == 4);
  CHECK(snapshot["templates"]["version"] == "builtin-v1");
  CHECK(snapshot["harness_version"] == kHarnessVersion);
  CHECK_FALSE(snapshot["templates"]["gen_reasoning"].get<std::string>().empty());
}

TEST_CASE("generate mode writes the candidate artifact round-trippable by intrinsic mode") {
  auto scratch = test::scratch_dir("harness_generate");
  ExperimentConfig config = demo::write_e2e_corpus((scratch / "corpus").string());
  config.mode = RunMode::generate;
  config.output_dir = (scratch / "gen").string();
  RunRecord record = run_generate(config);

  CHECK(record.report["counts"]["examples"] == 8);
  CHECK(record.report["counts"]["candidates"] == 40);
  auto artifact_path = (scratch / "gen" / "candidates.jsonl").string();
  REQUIRE(fs::exists(artifact_path));
  auto artifact = load_candidate_artifact(artifact_path);
  CHECK(artifact.size() == 8);
  CHECK(artifact.at("0").size() == 5);
  CHECK(artifact.at("0")[0].extraction_ok);

  // The regenerated artifact feeds intrinsic mode directly.
  ExperimentConfig intrinsic = config;
  intrinsic.mode = RunMode::intrinsic;
  intrinsic.output_dir.clear();
  intrinsic.candidates_path = artifact_path;
  RunRecord report = run_intrinsic(intrinsic);
  CHECK_FALSE(report.report["intrinsic"]["pw_acc"].is_null());
}

TEST_CASE("intrinsic evaluation honors the executability check") {
  auto scratch = test::scratch_dir("harness_intrinsic_check");
  ExperimentConfig config = demo::write_intrinsic_corpus((scratch / "corpus").string());
  config.mode = RunMode::intrinsic;
  config.plan.executability_check = true;
  RunRecord record = run_intrinsic(config);

  // Filtering the invalid candidate (iC.c0) flips both its pairs and the iC
  // hit; filtered candidates join the failure count. Hand tally: PwAcc 7/8,
  // H@1 3/4, MRR (1+0.5+1+1)/4, failures 4/12, confusion TP=4 FP=1 FN=0 TN=7.
  const json& m = record.report["intrinsic"];
  CHECK(m["pw_acc"].get<double>() == doctest::Approx(87.5).epsilon(1e-12));
  CHECK(m["hit_at_1"].get<double>() == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(m["mrr"].get<double>() == doctest::Approx(87.5).epsilon(1e-12));
  CHECK(m["fail_rate"].get<double>() == doctest::Approx(100.0 / 3.0).epsilon(1e-12));
  CHECK(m["macro_f1"].get<double>() ==
        doctest::Approx(100.0 * (8.0 / 9.0 + 14.0 / 15.0) / 2.0).epsilon(1e-12));
  CHECK(record.report["counts"]["discriminator_calls"].get<int>() == 11);

  // The filtered candidate is recorded as unscored and non-executable.
  for (const auto& rec : record.records) {
    if (rec["example_id"] != "iC") continue;
    CHECK(rec["candidates"][0]["executable"] == false);
    CHECK(rec["candidates"][0]["scored"] == false);
    CHECK(rec["candidates"][0]["score"]["value"] == -0.5);
  }
}

TEST_CASE("non-reasoning generator and discriminator flow end to end") {
  auto scratch = test::scratch_dir("harness_nonreasoning");
  demo::write_demo_databases((scratch / "db").string());

  TaskExample ex;
  ex.id = "0";
  ex.question = "How many singers are there?";
  ex.gold_sql = "SELECT count(*) FROM singer";
  ex.db_id = "mini_concert";
  DbSchema schema;
  schema.db_id = "mini_concert";
  schema.tables = {SchemaTable{"singer", {"singer_id", "name", "country", "age"}},
                   SchemaTable{"concert", {"concert_id", "concert_name", "year", "singer_id"}}};

  write_file((scratch / "examples.json").string(),
             json::array({json{{"id", "0"},
                               {"question", ex.question},
                               {"query", ex.gold_sql},
                               {"db_id", ex.db_id},
                               {"difficulty", "easy"}}})
                 .dump());
  write_file(
      (scratch / "tables.json").string(),
      json::array(
          {json{{"db_id", "mini_concert"},
                {"table_names_original", {"singer", "concert"}},
                {"column_names_original",
                 json::array({{-1, "*"}, {0, "singer_id"}, {0, "name"}, {0, "country"},
                              {0, "age"}, {1, "concert_id"}, {1, "concert_name"}, {1, "year"},
                              {1, "singer_id"}})}}})
          .dump());

  std::string gen_prompt = build_generation_prompt(ex, schema, ModelKind::non_reasoning);
  auto yes_no = [](const std::string& prompt, double lp_yes, double lp_no) {
    return json{{"match", {{"exact_prompt_sha256", sha256_hex(prompt)}}},
                {"response_text", "Yes"},
                {"token_texts", {"Yes"}},
                {"token_logprobs", {std::max(lp_yes, lp_no)}},
                {"token_top_logprobs", json::array({json{{"Yes", lp_yes}, {"No", lp_no}}})},
                {"finish_reason", "stop"}};
  };
  std::string good_sql = "SELECT count(*) FROM singer;";
  std::string bad_sql = "SELECT count(*) FROM singer WHERE age > 40;";
  json rules = json::array({
      json{{"match", {{"exact_prompt_sha256", sha256_hex(gen_prompt)}}},
           {"responses",
            json::array({
                json{{"response_text", " " + bad_sql + " -- maybe"}, {"finish_reason", "stop"}},
                json{{"response_text", " " + good_sql + "\n\nThat answers it."},
                     {"finish_reason", "stop"}},
            })}},
      yes_no(build_discrimination_prompt(ex.question, bad_sql, nullptr, ModelKind::non_reasoning),
             -2.0, -0.2),
      yes_no(build_discrimination_prompt(ex.question, good_sql, nullptr, ModelKind::non_reasoning),
             -0.1, -2.4),
  });
  write_file((scratch / "fixture.json").string(), json{{"rules", rules}}.dump());

  ExperimentConfig config;
  config.mode = RunMode::e2e;
  config.examples_path = (scratch / "examples.json").string();
  config.tables_path = (scratch / "tables.json").string();
  config.db_root = (scratch / "db").string();
  config.backend = "mock:" + (scratch / "fixture.json").string();
  config.generator_kind = ModelKind::non_reasoning;
  config.plan.discriminator.kind = ModelKind::non_reasoning;
  config.gen.n_samples = 2;

  RunRecord record = run_end_to_end(config);
  CHECK(record.report["execution_accuracy"]["overall"].get<double>() == doctest::Approx(100.0));
  REQUIRE(record.records.size() == 1);
  CHECK(record.records[0]["chosen_sql"] == good_sql);
  // Yes/No softmax scores recorded for both candidates.
  CHECK(record.records[0]["candidates"][0]["score"]["value"].get<double>() ==
        doctest::Approx(0.1418).epsilon(1e-3));
  CHECK(record.records[0]["candidates"][1]["score"]["value"].get<double>() ==
        doctest::Approx(0.9089).epsilon(1e-3));
}

TEST_CASE("reports are independent of the worker count") {
  auto scratch = test::scratch_dir("harness_concurrency");
  ExperimentConfig config = demo::write_sweep_corpus((scratch / "corpus").string());
  config.mode = RunMode::intrinsic;
  config.plan.discriminator.max_new_tokens = 700;

  config.concurrency = 1;
  RunRecord serial = run_intrinsic(config);
  config.concurrency = 8;
  RunRecord parallel = run_intrinsic(config);
  CHECK(serial.report.dump() == parallel.report.dump());
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].dump() == parallel.records[i].dump());
  }
}

TEST_CASE("balanced subsetting flows through a run") {
  auto scratch = test::scratch_dir("harness_subset");
  ExperimentConfig config = demo::write_sweep_corpus((scratch / "corpus").string());
  config.mode = RunMode::intrinsic;
  config.plan.discriminator.max_new_tokens = 2048;
  config.n_per_tier = 2;
  config.seed = 3;

  RunRecord record = run_intrinsic(config);
  CHECK(record.report["counts"]["examples"].get<int>() == 8);
  std::map<std::string, int> tiers;
  for (const auto& rec : record.records) tiers[rec["difficulty"].get<std::string>()]++;
  for (const char* tier : {"easy", "medium", "hard", "extra"}) CHECK(tiers[tier] == 2);

  // Same seed, same subset; different seed, different subset (with high
  // probability on this corpus).
  RunRecord again = run_intrinsic(config);
  CHECK(again.records.size() == record.records.size());
  for (std::size_t i = 0; i < record.records.size(); ++i) {
    CHECK(again.records[i]["example_id"] == record.records[i]["example_id"]);
  }
}

TEST_CASE("harness error paths") {
  auto scratch = test::scratch_dir("harness_errors");
  ExperimentConfig config = demo::write_intrinsic_corpus((scratch / "corpus").string());
  config.mode = RunMode::intrinsic;

  SUBCASE("missing candidate artifact") {
    config.candidates_path = (scratch / "nope.jsonl").string();
    CHECK_THROWS_AS(run_intrinsic(config), LoadError);
  }
  SUBCASE("empty candidate artifact") {
    write_file((scratch / "empty.jsonl").string(), "");
    config.candidates_path = (scratch / "empty.jsonl").string();
    CHECK_THROWS_AS(run_intrinsic(config), LoadError);
  }
  SUBCASE("artifact missing an example") {
    write_file((scratch / "partial.jsonl").string(),
               R"({"example_id":"iA","candidates":[]})" "\n");
    config.candidates_path = (scratch / "partial.jsonl").string();
    CHECK_THROWS_WITH_AS(run_intrinsic(config), doctest::Contains("iB"), LoadError);
  }
  SUBCASE("sweep budgets must increase strictly") {
    config.mode = RunMode::sweep;
    config.budget_list = {256, 256};
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config.budget_list = {};
    CHECK_THROWS_AS(config.validate(), ConfigError);
  }
  SUBCASE("binary scoring on a non-reasoning discriminator is rejected") {
    config.plan.discriminator.kind = ModelKind::non_reasoning;
    config.plan.discriminator.scoring = ScoringMode::binary;
    CHECK_THROWS_AS(config.validate(), ConfigError);
  }
}

TEST_CASE("template files on disk mirror the built-in set") {
  // The shipped templates/ directory must stay in sync with the compiled-in
  // defaults; runs snapshot whichever set is active.
  auto source_templates = fs::path(SQLPLAN_FIXTURE_DIR).parent_path().parent_path() / "templates";
  REQUIRE(fs::exists(source_templates));
  TemplateSet from_files = TemplateSet::from_dir(source_templates.string());
  const TemplateSet& builtin = TemplateSet::builtin();
  CHECK(from_files.gen_reasoning == builtin.gen_reasoning);
  CHECK(from_files.gen_nonreasoning == builtin.gen_nonreasoning);
  CHECK(from_files.disc_nonreasoning == builtin.disc_nonreasoning);
  CHECK(from_files.disc_reasoning == builtin.disc_reasoning);
  CHECK(from_files.disc_reasoning_schema == builtin.disc_reasoning_schema);
}
