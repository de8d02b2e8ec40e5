#include "sqlplan/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sqlplan/util.hpp"

namespace sqlplan {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<Difficulty> parse_difficulty(std::string_view label) {
  std::string l = to_lower(trim(label));
  if (l == "easy") return Difficulty::easy;
  if (l == "medium") return Difficulty::medium;
  if (l == "hard") return Difficulty::hard;
  // Spider labels the top tier "extra" (a.k.a. extra-hard).
  if (l == "extra" || l == "extra-hard" || l == "extra_hard" || l == "extrahard")
    return Difficulty::extra;
  return std::nullopt;
}

std::string to_string(Difficulty d) {
  switch (d) {
    case Difficulty::easy: return "easy";
    case Difficulty::medium: return "medium";
    case Difficulty::hard: return "hard";
    case Difficulty::extra: return "extra";
  }
  return "easy";
}

namespace {

std::map<std::size_t, Difficulty> load_difficulty_sidecar(const std::string& path) {
  std::map<std::size_t, Difficulty> out;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LoadError("difficulty sidecar line " + std::to_string(line_no) +
                      ": expected index<TAB>tier");
    }
    std::size_t index = 0;
    try {
      index = std::stoull(trim(line.substr(0, tab)));
    } catch (const std::exception&) {
      throw LoadError("difficulty sidecar line " + std::to_string(line_no) + ": bad index");
    }
    auto tier = parse_difficulty(line.substr(tab + 1));
    if (!tier) {
      throw LoadError("difficulty sidecar line " + std::to_string(line_no) +
                      ": unknown difficulty label '" + trim(line.substr(tab + 1)) + "'");
    }
    out[index] = *tier;
  }
  return out;
}

}  // namespace

std::vector<TaskExample> load_examples(const std::string& examples_path,
                                       const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(read_file(examples_path));
  } catch (const json::exception& e) {
    throw LoadError("examples file " + examples_path + ": " + e.what());
  }
  if (!doc.is_array()) throw LoadError("examples file " + examples_path + ": expected an array");

  std::map<std::size_t, Difficulty> sidecar;
  if (!options.difficulty_sidecar_path.empty()) {
    sidecar = load_difficulty_sidecar(options.difficulty_sidecar_path);
  }

  std::vector<TaskExample> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    auto fail = [&](const std::string& what) -> LoadError {
      return LoadError("examples file " + examples_path + ": record " + std::to_string(i) +
                       ": " + what);
    };
    if (!rec.is_object()) throw fail("expected an object");
    if (!rec.contains("question") || !rec["question"].is_string()) throw fail("missing `question`");
    if (!rec.contains("query") || !rec["query"].is_string()) throw fail("missing `query`");
    if (!rec.contains("db_id") || !rec["db_id"].is_string()) throw fail("missing `db_id`");

    TaskExample ex;
    ex.id = rec.contains("id") && rec["id"].is_string() ? rec["id"].get<std::string>()
                                                        : std::to_string(i);
    ex.question = trim(rec["question"].get<std::string>());
    ex.gold_sql = trim(rec["query"].get<std::string>());
    ex.db_id = rec["db_id"].get<std::string>();
    if (ex.question.empty()) throw fail("empty question");
    if (ex.gold_sql.empty()) throw fail("empty query");

    if (rec.contains("difficulty")) {
      if (!rec["difficulty"].is_string()) throw fail("non-string difficulty");
      auto tier = parse_difficulty(rec["difficulty"].get<std::string>());
      if (!tier) {
        throw fail("unknown difficulty label '" + rec["difficulty"].get<std::string>() + "'");
      }
      ex.difficulty = *tier;
    } else {
      auto it = sidecar.find(i);
      if (it == sidecar.end()) {
        throw fail("no difficulty: not inline and not in sidecar");
      }
      ex.difficulty = it->second;
    }

    if (!options.db_root.empty()) {
      auto path = db_path_for(options.db_root, ex.db_id);
      if (!fs::exists(path)) {
        throw fail("db_id '" + ex.db_id + "' has no database file at " + path);
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::map<std::string, DbSchema> load_schemas(const std::string& tables_path) {
  json doc;
  try {
    doc = json::parse(read_file(tables_path));
  } catch (const json::exception& e) {
    throw LoadError("tables file " + tables_path + ": " + e.what());
  }
  if (!doc.is_array()) throw LoadError("tables file " + tables_path + ": expected an array");

  std::map<std::string, DbSchema> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    auto fail = [&](const std::string& what) -> LoadError {
      return LoadError("tables file " + tables_path + ": entry " + std::to_string(i) + ": " + what);
    };
    if (!rec.is_object() || !rec.contains("db_id") || !rec["db_id"].is_string())
      throw fail("missing `db_id`");
    DbSchema schema;
    schema.db_id = rec["db_id"].get<std::string>();
    if (out.count(schema.db_id)) throw fail("duplicate db_id '" + schema.db_id + "'");

    if (!rec.contains("table_names_original") || !rec["table_names_original"].is_array())
      throw fail("missing `table_names_original`");
    for (const json& name : rec["table_names_original"]) {
      if (!name.is_string()) throw fail("non-string table name");
      schema.tables.push_back(SchemaTable{name.get<std::string>(), {}});
    }

    if (!rec.contains("column_names_original") || !rec["column_names_original"].is_array())
      throw fail("missing `column_names_original`");
    for (const json& col : rec["column_names_original"]) {
      if (!col.is_array() || col.size() != 2 || !col[0].is_number_integer() || !col[1].is_string())
        throw fail("malformed column entry");
      long long table_index = col[0].get<long long>();
      if (table_index == -1) continue;  // Spider's synthetic "*" column
      if (table_index < 0 || table_index >= static_cast<long long>(schema.tables.size()))
        throw fail("column '" + col[1].get<std::string>() + "' references table index " +
                   std::to_string(table_index) + " out of range");
      schema.tables[static_cast<std::size_t>(table_index)].columns.push_back(
          col[1].get<std::string>());
    }
    for (const auto& t : schema.tables) {
      if (t.columns.empty()) throw fail("table '" + t.name + "' has no columns");
    }
    out.emplace(schema.db_id, std::move(schema));
  }
  return out;
}

std::vector<TaskExample> sample_balanced(const std::vector<TaskExample>& examples, int n_per_tier,
                                         std::uint64_t seed) {
  if (n_per_tier < 0) throw ConfigError("n_per_tier must be >= 0");
  std::vector<std::vector<TaskExample>> by_tier(kDifficultyCount);
  for (const auto& ex : examples) {
    by_tier[static_cast<std::size_t>(ex.difficulty)].push_back(ex);
  }
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  auto next = [&rng]() { return rng(); };

  std::vector<TaskExample> out;
  for (int tier = 0; tier < kDifficultyCount; ++tier) {
    auto& pool = by_tier[static_cast<std::size_t>(tier)];
    if (static_cast<int>(pool.size()) < n_per_tier) {
      throw LoadError("tier '" + to_string(static_cast<Difficulty>(tier)) + "' has only " +
                      std::to_string(pool.size()) + " examples, need " +
                      std::to_string(n_per_tier));
    }
    // Partial Fisher-Yates; bounded_uniform keeps the draw sequence portable.
    for (int i = 0; i < n_per_tier; ++i) {
      auto j = static_cast<std::size_t>(i) +
               bounded_uniform(static_cast<std::uint32_t>(pool.size() - static_cast<std::size_t>(i)),
                               next);
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      out.push_back(pool[static_cast<std::size_t>(i)]);
    }
  }
  std::sort(out.begin(), out.end(), [](const TaskExample& a, const TaskExample& b) {
    if (a.difficulty != b.difficulty) return a.difficulty < b.difficulty;
    return a.id < b.id;
  });
  return out;
}

std::string format_schema_context(const DbSchema& schema) {
  std::string out;
  for (std::size_t t = 0; t < schema.tables.size(); ++t) {
    if (t > 0) out += '\n';
    out += "-- Table " + schema.tables[t].name + ": ";
    for (std::size_t c = 0; c < schema.tables[t].columns.size(); ++c) {
      if (c > 0) out += ", ";
      out += schema.tables[t].columns[c];
    }
  }
  return out;
}

std::string db_path_for(const std::string& db_root, const std::string& db_id) {
  return (fs::path(db_root) / db_id / (db_id + ".sqlite")).string();
}

}  // namespace sqlplan
