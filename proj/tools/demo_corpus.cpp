#include "demo_corpus.hpp"

#include <sqlite3.h>

#include <filesystem>

#include "json.hpp"
#include "sqlplan/discriminator.hpp"
#include "sqlplan/generator.hpp"
#include "sqlplan/harness.hpp"
#include "sqlplan/mock_backend.hpp"
#include "sqlplan/util.hpp"

namespace sqlplan::demo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Databases

const std::vector<std::string> kConcertDdl = {
    "CREATE TABLE singer (singer_id INTEGER PRIMARY KEY, name TEXT, country TEXT, age INTEGER);",
    "INSERT INTO singer VALUES (1,'Joe','USA',52),(2,'Ana','France',43),(3,'Li','China',19),"
    "(4,'Max','France',35);",
    "CREATE TABLE concert (concert_id INTEGER PRIMARY KEY, concert_name TEXT, year INTEGER, "
    "singer_id INTEGER);",
    "INSERT INTO concert VALUES (1,'Summer Fest',2014,1),(2,'Winter Gala',2015,2),"
    "(3,'Spring Jam',2015,3),(4,'Autumn Beats',2016,2);",
};

const std::vector<std::string> kLibraryDdl = {
    "CREATE TABLE book (book_id INTEGER PRIMARY KEY, title TEXT, pages INTEGER, "
    "author_id INTEGER);",
    "INSERT INTO book VALUES (1,'Dune',412,1),(2,'Emma',374,2),(3,'Hamlet',160,3),"
    "(4,'Nemesis',201,2);",
    "CREATE TABLE author (author_id INTEGER PRIMARY KEY, name TEXT, country TEXT);",
    "INSERT INTO author VALUES (1,'Frank','USA'),(2,'Jane','UK'),(3,'Will','UK');",
};

json tables_json() {
  return json::array({
      json{{"db_id", "mini_concert"},
           {"table_names_original", {"singer", "concert"}},
           {"column_names_original",
            json::array({{-1, "*"},
                         {0, "singer_id"},
                         {0, "name"},
                         {0, "country"},
                         {0, "age"},
                         {1, "concert_id"},
                         {1, "concert_name"},
                         {1, "year"},
                         {1, "singer_id"}})}},
      json{{"db_id", "mini_library"},
           {"table_names_original", {"book", "author"}},
           {"column_names_original",
            json::array({{-1, "*"},
                         {0, "book_id"},
                         {0, "title"},
                         {0, "pages"},
                         {0, "author_id"},
                         {1, "author_id"},
                         {1, "name"},
                         {1, "country"}})}},
  });
}

void write_databases(const fs::path& dir) {
  write_demo_databases((dir / "db").string());
}

// ---------------------------------------------------------------------------
// Fixture construction

enum class DiscKind { verdict_true, verdict_false, missing_stop, missing_length, none };

struct DemoCandidate {
  std::string sql;  // empty -> unextractable raw output
  std::string raw_fail_text;
  DiscKind disc = DiscKind::none;
  double emitted_lp = -0.1;
  double alt_lp = -2.0;
};

struct DemoExample {
  std::string id;
  std::string db_id;
  std::string difficulty;
  std::string question;
  std::string gold;
  std::string think;  // chain-of-thought body used in scripted responses
  std::vector<DemoCandidate> candidates;
};

std::string gen_raw_for(const DemoExample& ex, const DemoCandidate& c) {
  if (c.sql.empty()) return c.raw_fail_text;
  return ex.think + "</think>\n\nThe final query follows.\n\n```sql\n" + c.sql + "\n```\n";
}

/// Scripted discrimination response with an exact logprob pair on the value
/// token. Tokens mirror the mock's synthesis so offsets line up.
json disc_response(const DemoExample& ex, const DemoCandidate& c) {
  if (c.disc == DiscKind::missing_length) {
    return json{{"response_text", ex.think}, {"finish_reason", "length"}};
  }
  if (c.disc == DiscKind::missing_stop) {
    return json{{"response_text", ex.think + "</think>\n\nNo final verdict can be committed."},
                {"finish_reason", "stop"}};
  }
  bool is_true = c.disc == DiscKind::verdict_true;
  std::string literal = is_true ? "true" : "false";
  std::string text =
      ex.think + "</think>\n\n```json\n{\"correct\": " + literal + "}\n```";

  auto token_texts = synthesize_tokens(text);
  std::size_t value_pos = text.rfind("\"correct\": ") + std::string("\"correct\": ").size();
  json texts = json::array(), lps = json::array(), tops = json::array();
  std::size_t cursor = 0;
  for (const auto& piece : token_texts) {
    texts.push_back(piece);
    bool is_value_token = value_pos >= cursor && value_pos < cursor + piece.size();
    lps.push_back(is_value_token ? c.emitted_lp : -0.1);
    if (is_value_token) {
      tops.push_back(json{{"true", is_true ? c.emitted_lp : c.alt_lp},
                          {"false", is_true ? c.alt_lp : c.emitted_lp}});
    } else {
      tops.push_back(nullptr);
    }
    cursor += piece.size();
  }
  return json{{"response_text", text},
              {"token_texts", std::move(texts)},
              {"token_logprobs", std::move(lps)},
              {"token_top_logprobs", std::move(tops)},
              {"finish_reason", "stop"}};
}

json exact_rule(const std::string& prompt, json response_fields) {
  response_fields["match"] = json{{"exact_prompt_sha256", sha256_hex(prompt)}};
  return response_fields;
}

struct CorpusFiles {
  json examples = json::array();
  std::string difficulty_tsv;
  json rules = json::array();
  std::vector<std::pair<std::string, std::vector<CandidateSql>>> artifact;
};

void add_generation_rule(CorpusFiles& files, const DemoExample& ex, const DbSchema& schema) {
  TaskExample task;
  task.id = ex.id;
  task.question = ex.question;
  task.gold_sql = ex.gold;
  task.db_id = ex.db_id;
  std::string prompt = build_generation_prompt(task, schema, ModelKind::reasoning);
  json responses = json::array();
  for (const auto& c : ex.candidates) {
    responses.push_back(json{{"response_text", gen_raw_for(ex, c)}, {"finish_reason", "stop"}});
  }
  files.rules.push_back(exact_rule(prompt, json{{"responses", std::move(responses)}}));
}

void add_discrimination_rules(CorpusFiles& files, const DemoExample& ex) {
  for (const auto& c : ex.candidates) {
    if (c.sql.empty() || c.disc == DiscKind::none) continue;
    std::string prompt =
        build_discrimination_prompt(ex.question, c.sql, nullptr, ModelKind::reasoning);
    files.rules.push_back(exact_rule(prompt, disc_response(ex, c)));
  }
}

void add_example(CorpusFiles& files, const DemoExample& ex, bool inline_difficulty) {
  json rec = {{"question", ex.question}, {"query", ex.gold}, {"db_id", ex.db_id},
              {"id", ex.id}};
  if (inline_difficulty) rec["difficulty"] = ex.difficulty;
  std::size_t index = files.examples.size();
  files.examples.push_back(std::move(rec));
  if (!inline_difficulty) {
    files.difficulty_tsv += std::to_string(index) + "\t" + ex.difficulty + "\n";
  }
  std::vector<CandidateSql> candidates;
  for (const auto& c : ex.candidates) {
    CandidateSql candidate;
    if (c.sql.empty()) {
      candidate.raw_output = c.raw_fail_text;
    } else {
      candidate.raw_output = c.sql;
      candidate.extracted_sql = c.sql;
      candidate.extraction_ok = true;
    }
    candidates.push_back(std::move(candidate));
  }
  files.artifact.emplace_back(ex.id, std::move(candidates));
}

ExperimentConfig write_corpus(const std::string& dir, const std::vector<DemoExample>& examples,
                              bool inline_difficulty, bool with_generation_rules) {
  fs::path root(dir);
  fs::create_directories(root);
  write_databases(root);

  auto schemas = [&] {
    std::map<std::string, DbSchema> out;
    for (const json& entry : tables_json()) {
      DbSchema schema;
      schema.db_id = entry["db_id"];
      // Lightweight rebuild from the descriptor written to disk.
      std::vector<std::string> names = entry["table_names_original"];
      for (const auto& n : names) schema.tables.push_back(SchemaTable{n, {}});
      for (const auto& col : entry["column_names_original"]) {
        long long t = col[0].get<long long>();
        if (t >= 0) schema.tables[static_cast<std::size_t>(t)].columns.push_back(col[1]);
      }
      out[schema.db_id] = schema;
    }
    return out;
  }();

  CorpusFiles files;
  for (const auto& ex : examples) {
    add_example(files, ex, inline_difficulty);
    add_discrimination_rules(files, ex);
    if (with_generation_rules) add_generation_rule(files, ex, schemas.at(ex.db_id));
  }

  write_file((root / "examples.json").string(), files.examples.dump(2) + "\n");
  write_file((root / "tables.json").string(), tables_json().dump(2) + "\n");
  if (!inline_difficulty) {
    write_file((root / "difficulty.tsv").string(), files.difficulty_tsv);
  }
  write_file((root / "fixture.json").string(),
             json{{"rules", files.rules}}.dump(2) + "\n");
  write_file((root / "candidates.jsonl").string(), candidate_artifact_to_jsonl(files.artifact));

  ExperimentConfig config;
  config.examples_path = (root / "examples.json").string();
  config.tables_path = (root / "tables.json").string();
  if (!inline_difficulty) config.difficulty_path = (root / "difficulty.tsv").string();
  config.db_root = (root / "db").string();
  config.backend = "mock:" + (root / "fixture.json").string();
  config.candidates_path = (root / "candidates.jsonl").string();
  config.generator_kind = ModelKind::reasoning;
  config.plan.discriminator.kind = ModelKind::reasoning;
  return config;
}

// ---------------------------------------------------------------------------
// Corpus definitions

std::vector<DemoExample> e2e_examples() {
  std::vector<DemoExample> out;
  auto fail_raw = [](const std::string& topic) {
    return "I looked at the " + topic + " but lost track of the schema.\n</think>\n\n"
           "I am unable to settle on a final query for this question.";
  };

  out.push_back(DemoExample{
      "0", "mini_concert", "easy", "How many singers are there?",
      "SELECT count(*) FROM singer",
      "The question asks for a count of singers. The singer table holds one row per singer. "
      "Counting its rows answers the question.\n",
      {
          {"SELECT count(*) FROM singer;", "", DiscKind::verdict_true, -0.05, -3.00},
          {"SELECT count(*) FROM singer WHERE age > 40;", "", DiscKind::verdict_false, -0.10,
           -2.30},
          {"SELECT name FROM singer;", "", DiscKind::missing_length},
          {"", fail_raw("singer table"), DiscKind::none},
          {"SELECT count(*) FROM singer WHERE age > 0;", "", DiscKind::verdict_true, -0.20,
           -1.90},
      }});
  out.push_back(DemoExample{
      "1", "mini_library", "easy", "List all book titles.",
      "SELECT title FROM book",
      "The question wants every title. The book table has a title column. Selecting it is "
      "enough.\n",
      {
          {"SELECT title FROM book;", "", DiscKind::verdict_true, -0.02, -4.00},
          {"SELECT title FROM book ORDER BY title;", "", DiscKind::verdict_true, -0.50, -1.00},
          {"SELECT pages FROM book;", "", DiscKind::verdict_false, -0.30, -1.50},
          {"SELECT titel FROM book;", "", DiscKind::verdict_true, -0.60, -0.90},
          {"", fail_raw("book table"), DiscKind::none},
      }});
  out.push_back(DemoExample{
      "2", "mini_concert", "medium",
      "What are the distinct countries of singers older than 30?",
      "SELECT DISTINCT country FROM singer WHERE age > 30",
      "The filter is age above thirty. The output should list countries. Duplicates may need "
      "removing.\n",
      {
          {"SELECT country FROM singer WHERE age > 30;", "", DiscKind::verdict_true, -0.04,
           -3.50},
          {"SELECT DISTINCT country FROM singer WHERE age > 30;", "", DiscKind::verdict_true,
           -0.35, -1.25},
          {"SELECT DISTINCT country FROM singer;", "", DiscKind::verdict_false, -0.20, -1.70},
          {"SELECT age FROM singer WHERE age > 30;", "", DiscKind::missing_stop},
          {"SELECT DISTINCT country FROM singer WHERE age >= 30;", "", DiscKind::verdict_true,
           -0.70, -0.80},
      }});
  out.push_back(DemoExample{
      "3", "mini_library", "medium",
      "How many books does each author have? Show the author id and the count.",
      "SELECT author_id, count(*) FROM book GROUP BY author_id",
      "Counting per author needs a group by on author_id. The output pairs the id with its "
      "count.\n",
      {
          {"SELECT author_id, count(*) FROM book GROUP BY author_id;", "",
           DiscKind::verdict_true, -0.10, -2.60},
          {"SELECT author_id FROM book GROUP BY author_id;", "", DiscKind::verdict_false, -0.15,
           -2.10},
          {"SELECT count(*) FROM book GROUP BY author_id;", "", DiscKind::missing_length},
          {"SELECT author_id, count(*) FROM book GROUP BY author_id ORDER BY author_id;", "",
           DiscKind::verdict_true, -0.45, -1.05},
          {"", fail_raw("author counts"), DiscKind::none},
      }});
  out.push_back(DemoExample{
      "4", "mini_concert", "hard",
      "List the names of concerts held in years with more than one concert.",
      "SELECT concert_name FROM concert WHERE year IN (SELECT year FROM concert GROUP BY year "
      "HAVING count(*) > 1)",
      "Years with several concerts need a grouped subquery. The outer query keeps concerts in "
      "those years.\n",
      {
          {"SELECT concert_name FROM concert WHERE year IN (SELECT year FROM concert GROUP BY "
           "year HAVING count(*) > 1);",
           "", DiscKind::verdict_true, -0.12, -2.20},
          {"SELECT concert_name FROM concerts WHERE year IN (SELECT year FROM concerts GROUP "
           "BY year HAVING count(*) > 1);",
           "", DiscKind::verdict_true, -0.02, -4.20},
          {"SELECT concert_name FROM concert WHERE year = 2015;", "", DiscKind::verdict_true,
           -0.55, -0.95},
          {"SELECT year FROM concert;", "", DiscKind::verdict_false, -0.25, -1.55},
          {"SELECT concert_id FROM concert;", "", DiscKind::missing_length},
      }});
  out.push_back(DemoExample{
      "5", "mini_library", "hard",
      "What is the name of the author who wrote the most books?",
      "SELECT author.name FROM author JOIN book ON author.author_id = book.author_id GROUP BY "
      "author.author_id ORDER BY count(*) DESC LIMIT 1",
      "The most books means ordering grouped counts. A join brings in the author name. Limit "
      "one keeps the top author.\n",
      {
          {"SELECT author.name FROM author JOIN book ON author.author_id = book.author_id "
           "GROUP BY author.author_id ORDER BY count(*) DESC LIMIT 1;",
           "", DiscKind::verdict_true, -0.07, -2.90},
          {"SELECT name FROM author ORDER BY name LIMIT 1;", "", DiscKind::verdict_false, -0.20,
           -1.80},
          {"SELECT author_id FROM book GROUP BY author_id ORDER BY count(*) DESC LIMIT 1;", "",
           DiscKind::missing_stop},
          {"", fail_raw("join keys"), DiscKind::none},
          {"SELECT name FROM author WHERE author_id = 2;", "", DiscKind::verdict_true, -0.60,
           -0.85},
      }});
  out.push_back(DemoExample{
      "6", "mini_concert", "extra",
      "What are the names of singers who did not perform in any concert?",
      "SELECT name FROM singer WHERE singer_id NOT IN (SELECT singer_id FROM concert)",
      "This needs singers missing from the concert table. I keep circling the join direction "
      "without settling it.\n",
      {
          {"", fail_raw("anti join"), DiscKind::none},
          {"", fail_raw("concert linkage"), DiscKind::none},
          {"", fail_raw("not exists clause"), DiscKind::none},
          {"", fail_raw("singer ids"), DiscKind::none},
          {"", fail_raw("subquery shape"), DiscKind::none},
      }});
  out.push_back(DemoExample{
      "7", "mini_library", "extra", "Which countries have more than one author?",
      "SELECT country FROM author GROUP BY country HAVING count(*) > 1",
      "Countries repeat per author. Grouping by country and keeping counts above one gives the "
      "answer.\n",
      {
          {"SELECT country FROM author GROUP BY country HAVING count(*) > 1;", "",
           DiscKind::verdict_true, -0.03, -3.80},
          {"SELECT country FROM author;", "", DiscKind::verdict_false, -0.10, -2.50},
          {"SELECT country FROM author GROUP BY country;", "", DiscKind::verdict_false, -0.40,
           -1.10},
          {"SELECT country FROM author GROUP BY country HAVING count(*) >= 2;", "",
           DiscKind::verdict_true, -0.30, -1.40},
          {"SELECT name FROM author;", "", DiscKind::missing_stop},
      }});
  return out;
}

std::vector<DemoExample> intrinsic_examples() {
  // Shared think body keeps per-trace quality metrics identical, so corpus
  // means stay hand-checkable.
  const std::string think = "I check the query. I check the query. It is fine.\n";
  std::vector<DemoExample> out;
  out.push_back(DemoExample{
      "iA", "mini_concert", "easy", "How many singers are there?",
      "SELECT count(*) FROM singer", think,
      {
          {"SELECT count(*) FROM singer;", "", DiscKind::verdict_true, -0.05, -3.00},
          {"SELECT count(*) FROM singer WHERE age > 40;", "", DiscKind::verdict_false, -0.10,
           -2.30},
          {"SELECT name FROM singer;", "", DiscKind::missing_length},
      }});
  out.push_back(DemoExample{
      "iB", "mini_library", "medium", "Which book titles have more than 300 pages?",
      "SELECT title FROM book WHERE pages > 300", think,
      {
          {"SELECT title FROM book WHERE pages > 200;", "", DiscKind::verdict_true, -0.20,
           -1.80},
          {"SELECT title FROM book WHERE pages > 300;", "", DiscKind::verdict_true, -0.30,
           -1.40},
          {"SELECT pages FROM book;", "", DiscKind::verdict_false, -0.15, -2.00},
      }});
  out.push_back(DemoExample{
      "iC", "mini_concert", "hard",
      "What are the names of singers who did not perform in any concert?",
      "SELECT name FROM singer WHERE singer_id NOT IN (SELECT singer_id FROM concert)", think,
      {
          {"SELECT name FROM singee;", "", DiscKind::verdict_true, -0.40, -1.20},
          {"SELECT name FROM singer WHERE singer_id NOT IN (SELECT singer_id FROM concert);",
           "", DiscKind::verdict_true, -0.60, -0.90},
          {"SELECT name FROM singer;", "", DiscKind::missing_stop},
      }});
  out.push_back(DemoExample{
      "iD", "mini_library", "extra", "Which countries have more than one author?",
      "SELECT country FROM author GROUP BY country HAVING count(*) > 1", think,
      {
          {"SELECT country FROM author GROUP BY country HAVING count(*) > 1;", "",
           DiscKind::verdict_true, -0.02, -4.00},
          {"SELECT country FROM author;", "", DiscKind::verdict_false, -0.05, -3.20},
          {"SELECT country FROM author GROUP BY country HAVING count(*) > 0;", "",
           DiscKind::missing_stop},
      }});
  return out;
}

struct SweepBase {
  std::string db_id;
  std::string question;
  std::string gold;
  std::string wrong;
};

const std::vector<SweepBase> kSweepBases = {
    {"mini_concert", "How many singers are there?", "SELECT count(*) FROM singer",
     "SELECT count(*) FROM singer WHERE age > 40;"},
    {"mini_library", "List all book titles.", "SELECT title FROM book",
     "SELECT pages FROM book;"},
    {"mini_concert", "What are the names of all singers?", "SELECT name FROM singer",
     "SELECT country FROM singer;"},
    {"mini_library", "List the countries of all authors.", "SELECT country FROM author",
     "SELECT name FROM author;"},
};

/// Scripted token counts (thinking plus answer) for the 40 sweep responses.
std::vector<int> sweep_token_totals() {
  std::vector<int> totals = {250, 250};
  totals.insert(totals.end(), 8, 300);
  totals.insert(totals.end(), 6, 450);
  totals.insert(totals.end(), 10, 600);
  totals.insert(totals.end(), 12, 800);
  totals.insert(totals.end(), 2, 1200);
  return totals;
}

json sweep_disc_response(int total_tokens, bool verdict_true) {
  const std::vector<std::string> tail = {
      "\n</think>\n\n```json\n", "{", "\"correct\"", ": ",
      verdict_true ? "true" : "false", "}", "\n```"};
  int pad = total_tokens - static_cast<int>(tail.size());
  json texts = json::array(), lps = json::array(), tops = json::array();
  std::string text;
  for (int i = 0; i < pad; ++i) {
    // Filler thinking with sentence boundaries so the per-trace quality
    // metrics stay well-defined; the token count is what the sweep controls.
    const char* words[] = {" step", " very", " deep"};
    std::string piece = i % 30 == 29 ? "." : words[i % 3];
    texts.push_back(piece);
    lps.push_back(-0.1);
    tops.push_back(nullptr);
    text += piece;
  }
  for (std::size_t i = 0; i < tail.size(); ++i) {
    texts.push_back(tail[i]);
    bool value = i == 4;
    lps.push_back(value ? -0.10 : -0.1);
    tops.push_back(value ? json{{"true", verdict_true ? -0.10 : -2.05},
                                {"false", verdict_true ? -2.05 : -0.10}}
                         : json(nullptr));
    text += tail[i];
  }
  return json{{"response_text", text},
              {"token_texts", std::move(texts)},
              {"token_logprobs", std::move(lps)},
              {"token_top_logprobs", std::move(tops)},
              {"finish_reason", "stop"}};
}

}  // namespace

void write_demo_databases(const std::string& db_root) {
  fs::path root(db_root);
  fs::create_directories(root / "mini_concert");
  fs::create_directories(root / "mini_library");
  build_database((root / "mini_concert" / "mini_concert.sqlite").string(), kConcertDdl);
  build_database((root / "mini_library" / "mini_library.sqlite").string(), kLibraryDdl);
}

void build_database(const std::string& path, const std::vector<std::string>& statements) {
  std::error_code ec;
  fs::remove(path, ec);
  sqlite3* db = nullptr;
  if (sqlite3_open_v2(path.c_str(), &db, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE, nullptr) !=
      SQLITE_OK) {
    std::string msg = db ? sqlite3_errmsg(db) : "open failed";
    if (db) sqlite3_close(db);
    throw RunError("cannot create database " + path + ": " + msg);
  }
  for (const auto& stmt : statements) {
    char* err = nullptr;
    if (sqlite3_exec(db, stmt.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "exec failed";
      sqlite3_free(err);
      sqlite3_close(db);
      throw RunError("statement failed in " + path + ": " + msg);
    }
  }
  sqlite3_close(db);
}

ExperimentConfig write_e2e_corpus(const std::string& dir) {
  ExperimentConfig config = write_corpus(dir, e2e_examples(), false, true);
  config.mode = RunMode::e2e;
  config.plan.discriminator.max_new_tokens = 1024;
  write_file((fs::path(dir) / "config.e2e.json").string(),
             config_to_json(config).dump(2) + "\n");
  return config;
}

ExperimentConfig write_intrinsic_corpus(const std::string& dir) {
  ExperimentConfig config = write_corpus(dir, intrinsic_examples(), false, false);
  config.mode = RunMode::intrinsic;
  config.plan.discriminator.max_new_tokens = 1024;
  write_file((fs::path(dir) / "config.intrinsic.json").string(),
             config_to_json(config).dump(2) + "\n");
  return config;
}

ExperimentConfig write_sweep_corpus(const std::string& dir) {
  fs::path root(dir);
  fs::create_directories(root);
  write_databases(root);

  // Twenty examples, each with one correct and one wrong candidate; the 40
  // scripted responses spread their token counts so budgets truncate a
  // controlled fraction.
  auto totals = sweep_token_totals();
  CorpusFiles files;
  for (int k = 0; k < 20; ++k) {
    const SweepBase& base = kSweepBases[static_cast<std::size_t>(k % 4)];
    char id[8];
    std::snprintf(id, sizeof(id), "s%02d", k);
    std::string question = base.question + " (variant " + std::to_string(k) + ")";
    const char* tiers[] = {"easy", "medium", "hard", "extra"};

    files.examples.push_back(json{{"id", id},
                                  {"question", question},
                                  {"query", base.gold},
                                  {"db_id", base.db_id},
                                  {"difficulty", tiers[k / 5]}});
    std::vector<CandidateSql> candidates;
    for (int c = 0; c < 2; ++c) {
      // Alternate the generation order of the correct candidate so low-budget
      // ties do not systematically favor it.
      bool correct = k % 2 == 0 ? c == 0 : c == 1;
      std::string sql = correct ? base.gold + ";" : base.wrong;
      CandidateSql candidate;
      candidate.raw_output = sql;
      candidate.extracted_sql = sql;
      candidate.extraction_ok = true;
      candidates.push_back(std::move(candidate));

      std::string prompt =
          build_discrimination_prompt(question, sql, nullptr, ModelKind::reasoning);
      files.rules.push_back(exact_rule(
          prompt, sweep_disc_response(totals[static_cast<std::size_t>(2 * k + c)], correct)));
    }
    files.artifact.emplace_back(id, std::move(candidates));
  }

  write_file((root / "examples.json").string(), files.examples.dump(2) + "\n");
  write_file((root / "tables.json").string(), tables_json().dump(2) + "\n");
  write_file((root / "fixture.json").string(), json{{"rules", files.rules}}.dump(2) + "\n");
  write_file((root / "candidates.jsonl").string(), candidate_artifact_to_jsonl(files.artifact));

  ExperimentConfig config;
  config.mode = RunMode::sweep;
  config.examples_path = (root / "examples.json").string();
  config.tables_path = (root / "tables.json").string();
  config.db_root = (root / "db").string();
  config.backend = "mock:" + (root / "fixture.json").string();
  config.candidates_path = (root / "candidates.jsonl").string();
  config.budget_list = {256, 400, 512, 700, 1024, 1536, 2048};
  config.plan.discriminator.kind = ModelKind::reasoning;
  write_file((root / "config.sweep.json").string(), config_to_json(config).dump(2) + "\n");
  return config;
}

ExperimentConfig write_dominance_corpus(const std::string& dir) {
  std::vector<DemoExample> examples;
  const char* tiers[] = {"easy", "medium", "hard", "extra"};
  for (int k = 0; k < 10; ++k) {
    DemoExample ex;
    ex.id = "d" + std::to_string(k);
    ex.db_id = "mini_concert";
    ex.difficulty = tiers[k % 4];
    ex.question = "How many singers are there in case " + std::to_string(k) + "?";
    ex.gold = "SELECT count(*) FROM singer";
    ex.think = "Counting singers needs the singer table. The filter choice decides "
               "correctness here.\n";
    if (k < 6) {
      ex.candidates = {
          {"SELECT count(*) FROM singers_missing;", "", DiscKind::verdict_true, -0.01, -4.50},
          {"SELECT count(*) FROM singer;", "", DiscKind::verdict_true, -0.30, -1.40},
          {"SELECT count(*) FROM singer WHERE age > 40;", "", DiscKind::verdict_false, -0.20,
           -1.70},
      };
    } else {
      ex.candidates = {
          {"SELECT count(*) FROM singer;", "", DiscKind::verdict_true, -0.05, -3.00},
          {"SELECT count(*) FROM singer WHERE age > 40;", "", DiscKind::verdict_false, -0.20,
           -1.70},
          {"SELECT count(*) FROM singers_missing;", "", DiscKind::verdict_false, -0.15, -2.00},
      };
    }
    examples.push_back(std::move(ex));
  }
  ExperimentConfig config = write_corpus(dir, examples, true, true);
  config.mode = RunMode::e2e;
  config.gen.n_samples = 3;
  write_file((fs::path(dir) / "config.dominance.json").string(),
             config_to_json(config).dump(2) + "\n");
  return config;
}

}  // namespace sqlplan::demo
