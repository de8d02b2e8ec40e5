#include "sqlplan/generator.hpp"

#include "sqlplan/util.hpp"

namespace sqlplan {

std::optional<ModelKind> parse_model_kind(std::string_view s) {
  std::string l = to_lower(trim(s));
  if (l == "reasoning") return ModelKind::reasoning;
  if (l == "non_reasoning" || l == "non-reasoning" || l == "nonreasoning")
    return ModelKind::non_reasoning;
  return std::nullopt;
}

std::string to_string(ModelKind k) {
  return k == ModelKind::reasoning ? "reasoning" : "non_reasoning";
}

std::string build_generation_prompt(const TaskExample& example, const DbSchema& schema,
                                    ModelKind kind, const TemplateSet& templates) {
  std::map<std::string, std::string> vars = {
      {"db_id", example.db_id},
      {"schema", format_schema_context(schema)},
      {"question", example.question},
  };
  const std::string& tmpl =
      kind == ModelKind::reasoning ? templates.gen_reasoning : templates.gen_nonreasoning;
  return render_template(tmpl, vars);
}

namespace {

CandidateSql finish_extraction(const std::string& raw, std::string candidate) {
  CandidateSql out;
  out.raw_output = raw;
  candidate = trim(candidate);
  if (!candidate.empty() && starts_with_ci(candidate, "select")) {
    out.extracted_sql = candidate;
    out.extraction_ok = true;
  }
  return out;
}

/// Inner text of the last complete ``` fenced block in `text`, skipping an
/// info string on the opening fence line.
std::optional<std::string> last_fenced_block(const std::string& text) {
  std::optional<std::string> result;
  std::size_t pos = 0;
  while (true) {
    std::size_t open = text.find("```", pos);
    if (open == std::string::npos) break;
    std::size_t body = open + 3;
    std::size_t line_end = text.find('\n', body);
    std::size_t close = text.find("```", body);
    if (close == std::string::npos) break;  // unterminated fence
    if (line_end != std::string::npos && line_end < close) body = line_end + 1;
    result = text.substr(body, close - body);
    pos = close + 3;
  }
  return result;
}

/// Statement starting at the last line whose first non-space characters are
/// SELECT, cut at the first ';' (inclusive) when present.
std::optional<std::string> last_line_initial_select(const std::string& text) {
  std::size_t best = std::string::npos;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t i = line_start;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (starts_with_ci(std::string_view(text).substr(i), "select")) best = i;
    std::size_t nl = text.find('\n', line_start);
    if (nl == std::string::npos) break;
    line_start = nl + 1;
  }
  if (best == std::string::npos) return std::nullopt;
  std::string stmt = text.substr(best);
  if (std::size_t semi = stmt.find(';'); semi != std::string::npos) {
    stmt = stmt.substr(0, semi + 1);
  }
  return stmt;
}

CandidateSql extract_reasoning(const std::string& raw) {
  // Region after the final think-close tag; whole output when the model never
  // closed its thinking (e.g. truncated).
  std::size_t region_start = 0;
  if (std::size_t close = raw.rfind("</think>"); close != std::string::npos) {
    region_start = close + std::string("</think>").size();
  }
  std::string region = raw.substr(region_start);

  if (auto block = last_fenced_block(region)) {
    return finish_extraction(raw, *block);
  }
  if (auto stmt = last_line_initial_select(region)) {
    return finish_extraction(raw, *stmt);
  }
  CandidateSql out;
  out.raw_output = raw;
  return out;
}

CandidateSql extract_non_reasoning(const std::string& raw) {
  std::string candidate = raw;
  if (std::size_t semi = raw.find(';'); semi != std::string::npos) {
    candidate = raw.substr(0, semi + 1);
  } else {
    // First blank-line boundary.
    std::size_t nl = raw.find('\n');
    while (nl != std::string::npos) {
      std::size_t j = nl + 1;
      while (j < raw.size() && (raw[j] == ' ' || raw[j] == '\t' || raw[j] == '\r')) ++j;
      if (j >= raw.size() || raw[j] == '\n') {
        candidate = raw.substr(0, nl);
        break;
      }
      nl = raw.find('\n', nl + 1);
    }
  }
  return finish_extraction(raw, candidate);
}

}  // namespace

CandidateSql extract_sql(const std::string& raw_output, ModelKind kind) {
  return kind == ModelKind::reasoning ? extract_reasoning(raw_output)
                                      : extract_non_reasoning(raw_output);
}

CandidateBatch generate_candidates(CompletionBackend& backend, const TaskExample& example,
                                   const DbSchema& schema, ModelKind kind,
                                   const CompletionRequest& params, const TemplateSet& templates) {
  CompletionRequest req = params;
  req.prompt = build_generation_prompt(example, schema, kind, templates);
  auto completions = backend.complete(req);

  CandidateBatch batch;
  batch.example_id = example.id;
  for (const auto& completion : completions) {
    if (completion.finish_reason == FinishReason::backend_error) {
      batch.candidates.push_back(CandidateSql{});
    } else {
      batch.candidates.push_back(extract_sql(completion.text, kind));
    }
  }
  return batch;
}

}  // namespace sqlplan
