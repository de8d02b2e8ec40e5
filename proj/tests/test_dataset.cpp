#include "doctest.h"
#include "json.hpp"
#include "sqlplan/dataset.hpp"
#include "sqlplan/util.hpp"
#include "support/test_env.hpp"

#include <random>
#include <set>

using namespace sqlplan;
using nlohmann::json;

namespace {

const char* kTiers[] = {"easy", "medium", "hard", "extra"};

/// Synthetic Spider-format dev file with `per_tier` examples per tier.
std::string write_examples_file(const std::filesystem::path& dir, int per_tier,
                                bool inline_difficulty) {
  json examples = json::array();
  std::string sidecar;
  int index = 0;
  for (int t = 0; t < 4; ++t) {
    for (int i = 0; i < per_tier; ++i) {
      json rec = {{"question", std::string("question ") + std::to_string(index)},
                  {"query", "SELECT " + std::to_string(index)},
                  {"db_id", "db_main"}};
      if (inline_difficulty) rec["difficulty"] = kTiers[t];
      examples.push_back(rec);
      sidecar += std::to_string(index) + "\t" + kTiers[t] + "\n";
      ++index;
    }
  }
  write_file((dir / "examples.json").string(), examples.dump());
  if (!inline_difficulty) write_file((dir / "difficulty.tsv").string(), sidecar);
  return (dir / "examples.json").string();
}

}  // namespace

TEST_CASE("load_examples reads a balanced file with a sidecar") {
  auto dir = test::scratch_dir("dataset_balanced");
  auto path = write_examples_file(dir, 100, false);
  LoadOptions options;
  options.difficulty_sidecar_path = (dir / "difficulty.tsv").string();
  auto examples = load_examples(path, options);
  REQUIRE(examples.size() == 400);
  std::map<Difficulty, int> counts;
  for (const auto& ex : examples) counts[ex.difficulty]++;
  for (int t = 0; t < 4; ++t) CHECK(counts[static_cast<Difficulty>(t)] == 100);
  CHECK(examples[0].id == "0");
  CHECK(examples[399].id == "399");
}

TEST_CASE("load_examples inline difficulty and empty file") {
  auto dir = test::scratch_dir("dataset_inline");
  auto path = write_examples_file(dir, 2, true);
  auto examples = load_examples(path);
  CHECK(examples.size() == 8);

  write_file((dir / "empty.json").string(), "[]");
  CHECK(load_examples((dir / "empty.json").string()).empty());
}

TEST_CASE("load_examples error paths name the record") {
  auto dir = test::scratch_dir("dataset_errors");
  write_file((dir / "missing_query.json").string(),
             R"([{"question": "q", "db_id": "d", "difficulty": "easy"}])");
  CHECK_THROWS_WITH_AS(load_examples((dir / "missing_query.json").string()),
                       doctest::Contains("record 0"), LoadError);

  write_file((dir / "bad_tier.json").string(),
             R"([{"question": "q", "query": "SELECT 1", "db_id": "d", "difficulty": "weird"}])");
  CHECK_THROWS_AS(load_examples((dir / "bad_tier.json").string()), LoadError);

  write_file((dir / "no_tier.json").string(),
             R"([{"question": "q", "query": "SELECT 1", "db_id": "d"}])");
  CHECK_THROWS_AS(load_examples((dir / "no_tier.json").string()), LoadError);
}

TEST_CASE("load_examples validates database presence when a root is given") {
  auto dir = test::scratch_dir("dataset_dbcheck");
  write_file((dir / "ex.json").string(),
             R"([{"question": "q", "query": "SELECT 1", "db_id": "ghost", "difficulty": "easy"}])");
  LoadOptions options;
  options.db_root = (dir / "db").string();
  CHECK_THROWS_WITH_AS(load_examples((dir / "ex.json").string(), options),
                       doctest::Contains("ghost"), LoadError);

  std::filesystem::create_directories(dir / "db" / "ghost");
  write_file((dir / "db" / "ghost" / "ghost.sqlite").string(), "");
  CHECK(load_examples((dir / "ex.json").string(), options).size() == 1);
}

TEST_CASE("load_schemas parses a descriptor and preserves order") {
  auto dir = test::scratch_dir("dataset_schemas");
  json tables = json::array({json{
      {"db_id", "d1"},
      {"table_names_original", {"t_b", "t_a", "t_d", "t_c"}},
      {"column_names_original",
       json::array({{-1, "*"}, {0, "x"}, {0, "y"}, {1, "z"}, {2, "w"}, {3, "v"}})},
  }});
  write_file((dir / "tables.json").string(), tables.dump());
  auto schemas = load_schemas((dir / "tables.json").string());
  REQUIRE(schemas.size() == 1);
  const DbSchema& schema = schemas.at("d1");
  REQUIRE(schema.tables.size() == 4);
  CHECK(schema.tables[0].name == "t_b");
  CHECK(schema.tables[0].columns == std::vector<std::string>{"x", "y"});
  CHECK(schema.tables[3].name == "t_c");

  write_file((dir / "empty.json").string(), "[]");
  CHECK(load_schemas((dir / "empty.json").string()).empty());
}

TEST_CASE("load_schemas rejects bad descriptors") {
  auto dir = test::scratch_dir("dataset_schema_errors");
  json out_of_range = json::array({json{
      {"db_id", "d1"},
      {"table_names_original", {"t"}},
      {"column_names_original", json::array({{5, "col"}})},
  }});
  write_file((dir / "oob.json").string(), out_of_range.dump());
  CHECK_THROWS_WITH_AS(load_schemas((dir / "oob.json").string()),
                       doctest::Contains("out of range"), LoadError);

  json dup = json::array({
      json{{"db_id", "d"},
           {"table_names_original", {"t"}},
           {"column_names_original", json::array({{0, "c"}})}},
      json{{"db_id", "d"},
           {"table_names_original", {"t"}},
           {"column_names_original", json::array({{0, "c"}})}},
  });
  write_file((dir / "dup.json").string(), dup.dump());
  CHECK_THROWS_WITH_AS(load_schemas((dir / "dup.json").string()), doctest::Contains("duplicate"),
                       LoadError);
}

TEST_CASE("sample_balanced draws exact tier counts deterministically") {
  auto dir = test::scratch_dir("dataset_sample");
  // Mirrors the full dev set's tier imbalance: 248/446/170/170.
  json examples = json::array();
  int counts[4] = {248, 446, 170, 170};
  int index = 0;
  for (int t = 0; t < 4; ++t) {
    for (int i = 0; i < counts[t]; ++i) {
      examples.push_back(json{{"question", "q" + std::to_string(index)},
                              {"query", "SELECT 1"},
                              {"db_id", "d"},
                              {"difficulty", kTiers[t]}});
      ++index;
    }
  }
  write_file((dir / "dev.json").string(), examples.dump());
  auto all = load_examples((dir / "dev.json").string());
  REQUIRE(all.size() == 1034);

  auto subset = sample_balanced(all, 100, 7);
  REQUIRE(subset.size() == 400);
  std::map<Difficulty, int> tier_counts;
  std::set<std::string> input_ids;
  for (const auto& ex : all) input_ids.insert(ex.id);
  for (const auto& ex : subset) {
    tier_counts[ex.difficulty]++;
    CHECK(input_ids.count(ex.id) == 1);
  }
  for (int t = 0; t < 4; ++t) CHECK(tier_counts[static_cast<Difficulty>(t)] == 100);

  // Sorted by (tier, id); deterministic across runs.
  for (std::size_t i = 1; i < subset.size(); ++i) {
    auto key = [](const TaskExample& e) { return std::make_pair(e.difficulty, e.id); };
    CHECK(key(subset[i - 1]) < key(subset[i]));
  }
  auto again = sample_balanced(all, 100, 7);
  REQUIRE(again.size() == subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) CHECK(again[i].id == subset[i].id);

  auto different_seed = sample_balanced(all, 100, 8);
  bool any_difference = false;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (different_seed[i].id != subset[i].id) any_difference = true;
  }
  CHECK(any_difference);

  CHECK(sample_balanced(all, 0, 7).empty());
  CHECK_THROWS_WITH_AS(sample_balanced(all, 200, 7), doctest::Contains("hard"), LoadError);
}

TEST_CASE("sample_balanced is tier-exact for many seeds") {
  std::vector<TaskExample> pool;
  for (int t = 0; t < 4; ++t) {
    for (int i = 0; i < 10; ++i) {
      TaskExample ex;
      ex.id = std::to_string(t * 10 + i);
      ex.question = "q";
      ex.gold_sql = "SELECT 1";
      ex.db_id = "d";
      ex.difficulty = static_cast<Difficulty>(t);
      pool.push_back(ex);
    }
  }
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto subset = sample_balanced(pool, 3, seed);
    std::map<Difficulty, int> counts;
    for (const auto& ex : subset) counts[ex.difficulty]++;
    for (int t = 0; t < 4; ++t) CHECK(counts[static_cast<Difficulty>(t)] == 3);
  }
}

TEST_CASE("format_schema_context renders comment-style lines") {
  DbSchema schema;
  schema.db_id = "concert_singer";
  schema.tables.push_back(SchemaTable{
      "singer",
      {"singer_id", "name", "country", "song_name", "song_release_year", "age", "is_male"}});
  CHECK(format_schema_context(schema) ==
        "-- Table singer: singer_id, name, country, song_name, song_release_year, age, is_male");

  DbSchema tiny{"d", {SchemaTable{"t", {"c"}}}};
  CHECK(format_schema_context(tiny) == "-- Table t: c");

  DbSchema two{"d", {SchemaTable{"a", {"x"}}, SchemaTable{"b", {"y", "z"}}}};
  CHECK(format_schema_context(two) == "-- Table a: x\n-- Table b: y, z");
}

TEST_CASE("format_schema_context distinguishes differing schemas") {
  std::mt19937 rng(11);
  std::set<std::string> rendered;
  int schemas = 0;
  for (int i = 0; i < 50; ++i) {
    DbSchema schema;
    schema.db_id = "d";
    int tables = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < tables; ++t) {
      SchemaTable table;
      table.name = "t" + std::to_string(rng() % 100);
      int cols = 1 + static_cast<int>(rng() % 4);
      for (int c = 0; c < cols; ++c) table.columns.push_back("c" + std::to_string(rng() % 100));
      schema.tables.push_back(table);
    }
    rendered.insert(format_schema_context(schema));
    ++schemas;
  }
  // Collisions would imply two distinct schemas rendering identically; the
  // generator can repeat a schema, so only check we did not lose many.
  CHECK(static_cast<int>(rendered.size()) >= schemas - 5);
}

TEST_CASE("db_path_for layout") {
  CHECK(db_path_for("/data/spider", "concert_singer") ==
        "/data/spider/concert_singer/concert_singer.sqlite");
}
