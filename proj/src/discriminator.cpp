#include "sqlplan/discriminator.hpp"

#include <regex>

#include "sqlplan/util.hpp"

namespace sqlplan {

std::optional<ScoringMode> parse_scoring_mode(std::string_view s) {
  std::string l = to_lower(trim(s));
  if (l == "soft") return ScoringMode::soft;
  if (l == "binary") return ScoringMode::binary;
  return std::nullopt;
}

std::string to_string(ScoringMode m) { return m == ScoringMode::soft ? "soft" : "binary"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::true_verdict: return "true";
    case Verdict::false_verdict: return "false";
    case Verdict::missing: return "missing";
  }
  return "missing";
}

void DiscriminatorConfig::validate() const {
  if (scoring == ScoringMode::binary && kind != ModelKind::reasoning) {
    throw ConfigError("binary scoring requires the reasoning discriminator "
                      "(non-reasoning scoring is inherently soft)");
  }
  if (schema_in_prompt && kind != ModelKind::reasoning) {
    throw ConfigError("schema context in the discrimination prompt requires the "
                      "reasoning discriminator");
  }
  if (max_new_tokens < 1) throw ConfigError("discriminator max_new_tokens must be >= 1");
}

std::string build_discrimination_prompt(const std::string& question, const std::string& sql,
                                        const DbSchema* schema, ModelKind kind,
                                        const TemplateSet& templates) {
  std::map<std::string, std::string> vars = {{"question", question}, {"sql", sql}};
  if (kind == ModelKind::non_reasoning) {
    return render_template(templates.disc_nonreasoning, vars);
  }
  if (schema == nullptr) {
    return render_template(templates.disc_reasoning, vars);
  }
  vars["schema"] = format_schema_context(*schema);
  return render_template(templates.disc_reasoning_schema, vars);
}

DiscriminationScore score_nonreasoning(CompletionBackend& backend, const std::string& prompt) {
  auto choices = backend.choice_logprobs(prompt, {"Yes", "No"});
  if (choices.backend_error) return DiscriminationScore::fallback();
  return DiscriminationScore::of(
      two_way_softmax(choices.logprobs.at("Yes"), choices.logprobs.at("No")));
}

namespace {

/// Strips whitespace and quotes, lowercases. "  \"True\"" -> "true".
std::string normalize_literal(std::string_view s) {
  std::string t = trim(s);
  while (!t.empty() && (t.front() == '"' || t.front() == '\'')) t.erase(t.begin());
  while (!t.empty() && (t.back() == '"' || t.back() == '\'')) t.pop_back();
  return to_lower(t);
}

/// Logprob of `literal` among the alternatives at one position. Accepts exact
/// matches and first-token prefixes ("fal" for "false").
std::optional<double> alternative_logprob(const TokenLogprob& token, const std::string& literal) {
  std::optional<double> best;
  std::size_t best_len = 0;
  for (const auto& [text, lp] : token.top_logprobs) {
    std::string key = normalize_literal(text);
    if (key.empty()) continue;
    if (key == literal || (literal.size() > key.size() && literal.rfind(key, 0) == 0)) {
      if (key.size() >= best_len) {
        best = lp;
        best_len = key.size();
      }
    }
  }
  return best;
}

}  // namespace

ReasoningParse parse_reasoning_output(const Completion& completion) {
  ReasoningParse parse;
  parse.truncated = completion.finish_reason == FinishReason::length;

  const std::string& text = completion.text;
  if (std::size_t close = text.find("</think>"); close != std::string::npos) {
    parse.reasoning_text = text.substr(0, close);
  } else {
    parse.reasoning_text = text;
  }
  if (completion.finish_reason == FinishReason::backend_error || text.empty()) return parse;

  // Last well-formed final-answer object wins; the grammar tolerates fences,
  // arbitrary whitespace, mixed case and quoted literals.
  static const std::regex object_re(
      R"(\{\s*["']?correct["']?\s*:\s*["']?(true|false)["']?\s*\})",
      std::regex::icase | std::regex::optimize);
  std::optional<std::pair<std::string, std::size_t>> last;  // literal, offset in text
  for (auto it = std::sregex_iterator(text.begin(), text.end(), object_re);
       it != std::sregex_iterator(); ++it) {
    last = {to_lower((*it)[1].str()), static_cast<std::size_t>(it->position(1))};
  }
  if (!last) return parse;

  const auto& [literal, value_pos] = *last;
  bool is_true = literal == "true";

  // Map the value literal's character offset to its token.
  std::size_t cursor = 0;
  const TokenLogprob* value_token = nullptr;
  for (const auto& token : completion.tokens) {
    if (value_pos < cursor + token.text.size()) {
      value_token = &token;
      break;
    }
    cursor += token.text.size();
  }
  if (value_token == nullptr) return parse;  // tokens do not cover the literal

  std::string alternative = is_true ? "false" : "true";
  double emitted_lp = value_token->logprob;
  double alt_lp = alternative_logprob(*value_token, alternative).value_or(kFloorLogprob);

  parse.verdict = is_true ? Verdict::true_verdict : Verdict::false_verdict;
  parse.true_logprob = is_true ? emitted_lp : alt_lp;
  parse.false_logprob = is_true ? alt_lp : emitted_lp;
  return parse;
}

DiscriminationScore soft_score_from_parse(const ReasoningParse& parse) {
  if (parse.verdict == Verdict::missing) return DiscriminationScore::fallback();
  double lp_true = parse.true_logprob.value_or(kFloorLogprob);
  double lp_false = parse.false_logprob.value_or(kFloorLogprob);
  // Emitted true -> rho(true); emitted false -> 1 - rho(false), which is the
  // same quantity: the probability mass on "correct".
  return DiscriminationScore::of(two_way_softmax(lp_true, lp_false));
}

DiscriminationScore binary_score_from_parse(const ReasoningParse& parse) {
  switch (parse.verdict) {
    case Verdict::true_verdict: return DiscriminationScore::of(1.0);
    case Verdict::false_verdict: return DiscriminationScore::of(0.0);
    case Verdict::missing: return DiscriminationScore::fallback();
  }
  return DiscriminationScore::fallback();
}

DiscriminationResult discriminate(CompletionBackend& backend, const std::string& question,
                                  const CandidateSql& candidate, const DbSchema* schema,
                                  const DiscriminatorConfig& config, const TemplateSet& templates) {
  config.validate();
  if (!candidate.extraction_ok || !candidate.extracted_sql) {
    return {DiscriminationScore::fallback(), std::nullopt};
  }
  const std::string& sql = *candidate.extracted_sql;

  if (config.kind == ModelKind::non_reasoning) {
    std::string prompt =
        build_discrimination_prompt(question, sql, nullptr, ModelKind::non_reasoning, templates);
    return {score_nonreasoning(backend, prompt), std::nullopt};
  }

  if (config.schema_in_prompt && schema == nullptr) {
    throw ConfigError("schema_in_prompt is set but no schema was supplied");
  }
  std::string prompt = build_discrimination_prompt(
      question, sql, config.schema_in_prompt ? schema : nullptr, ModelKind::reasoning, templates);
  CompletionRequest req;
  req.prompt = prompt;
  req.max_new_tokens = config.max_new_tokens;
  req.temperature = config.temperature;
  req.n_samples = 1;
  auto completions = backend.complete(req);
  if (completions.empty() || completions.front().finish_reason == FinishReason::backend_error) {
    return {DiscriminationScore::fallback(), std::nullopt};
  }
  ReasoningParse parse = parse_reasoning_output(completions.front());
  DiscriminationScore score = config.scoring == ScoringMode::soft
                                  ? soft_score_from_parse(parse)
                                  : binary_score_from_parse(parse);
  return {score, std::move(parse)};
}

}  // namespace sqlplan
