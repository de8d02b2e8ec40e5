#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqlplan/dataset.hpp"
#include "sqlplan/llm_backend.hpp"
#include "sqlplan/templates.hpp"

namespace sqlplan {

enum class ModelKind { reasoning, non_reasoning };

std::optional<ModelKind> parse_model_kind(std::string_view s);
std::string to_string(ModelKind k);

/// One generated candidate. extraction_ok is true exactly when extracted_sql
/// is present and starts with SELECT (case-insensitive, trimmed).
struct CandidateSql {
  std::string raw_output;
  std::optional<std::string> extracted_sql;
  bool extraction_ok = false;
};

struct CandidateBatch {
  std::string example_id;
  std::vector<CandidateSql> candidates;  // backend sample order
};

std::string build_generation_prompt(const TaskExample& example, const DbSchema& schema,
                                    ModelKind kind,
                                    const TemplateSet& templates = TemplateSet::builtin());

/// Pulls the final SQL out of raw model output.
///
/// reasoning: last fenced code block after the think-close tag; if none, the
/// statement starting at the last line-initial SELECT, cut at its first ';'.
/// non_reasoning: output up to the first ';' (inclusive) or the first blank
/// line. Failure is encoded as extraction_ok=false, never thrown.
CandidateSql extract_sql(const std::string& raw_output, ModelKind kind);

CandidateBatch generate_candidates(CompletionBackend& backend, const TaskExample& example,
                                   const DbSchema& schema, ModelKind kind,
                                   const CompletionRequest& params,
                                   const TemplateSet& templates = TemplateSet::builtin());

}  // namespace sqlplan
