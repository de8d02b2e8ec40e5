#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sqlplan {

enum class Difficulty { easy, medium, hard, extra };

std::optional<Difficulty> parse_difficulty(std::string_view label);
std::string to_string(Difficulty d);
constexpr int kDifficultyCount = 4;

/// One natural-language question with its gold query.
struct TaskExample {
  std::string id;
  std::string question;
  std::string gold_sql;
  std::string db_id;
  Difficulty difficulty = Difficulty::easy;
};

struct SchemaTable {
  std::string name;
  std::vector<std::string> columns;
};

struct DbSchema {
  std::string db_id;
  std::vector<SchemaTable> tables;
};

struct LoadOptions {
  /// Newline-delimited "index<TAB>tier" records; required when examples carry
  /// no inline difficulty field.
  std::string difficulty_sidecar_path;
  /// When set, every example's db_id must resolve to
  /// <db_root>/<db_id>/<db_id>.sqlite.
  std::string db_root;
};

/// Loads a Spider-format example array (question, query, db_id). Ids default to
/// the zero-based file index. Throws LoadError naming the failing record.
std::vector<TaskExample> load_examples(const std::string& examples_path,
                                       const LoadOptions& options = {});

/// Loads a Spider tables descriptor into per-database schemas, preserving
/// table and column order.
std::map<std::string, DbSchema> load_schemas(const std::string& tables_path);

/// Draws exactly n_per_tier examples from every difficulty tier, deterministic
/// for a fixed seed. Output sorted by (tier, id).
std::vector<TaskExample> sample_balanced(const std::vector<TaskExample>& examples,
                                         int n_per_tier, std::uint64_t seed);

/// Renders the schema as prompt context, one comment line per table:
///   -- Table <name>: <col1>, <col2>, ...
std::string format_schema_context(const DbSchema& schema);

/// <db_root>/<db_id>/<db_id>.sqlite
std::string db_path_for(const std::string& db_root, const std::string& db_id);

}  // namespace sqlplan
