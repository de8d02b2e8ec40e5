#pragma once

#include <optional>
#include <string>

#include "sqlplan/dataset.hpp"
#include "sqlplan/generator.hpp"
#include "sqlplan/llm_backend.hpp"
#include "sqlplan/templates.hpp"

namespace sqlplan {

enum class ScoringMode { soft, binary };

std::optional<ScoringMode> parse_scoring_mode(std::string_view s);
std::string to_string(ScoringMode m);

struct DiscriminatorConfig {
  ModelKind kind = ModelKind::reasoning;
  ScoringMode scoring = ScoringMode::soft;
  bool schema_in_prompt = false;
  int max_new_tokens = 1024;
  double temperature = 0.0;

  /// binary scoring and schema context exist only for the reasoning kind.
  void validate() const;
};

enum class Verdict { true_verdict, false_verdict, missing };

std::string to_string(Verdict v);

/// Parsed final answer of a reasoning discrimination completion. The logprobs
/// are attached by side: true_logprob belongs to the "true" value token,
/// false_logprob to "false", whichever of the two was emitted.
struct ReasoningParse {
  Verdict verdict = Verdict::missing;
  std::optional<double> true_logprob;
  std::optional<double> false_logprob;
  std::string reasoning_text;  // chain-of-thought body (text before </think>)
  bool truncated = false;      // completion hit the token budget
};

/// Candidate evaluation score: a probability in [0,1], or the -0.5 sentinel
/// when no verdict could be extracted.
struct DiscriminationScore {
  double value = kFailureSentinel;
  bool failed = true;

  static constexpr double kFailureSentinel = -0.5;
  static DiscriminationScore fallback() { return DiscriminationScore{kFailureSentinel, true}; }
  static DiscriminationScore of(double v) { return DiscriminationScore{v, false}; }
};

/// Renders the discrimination prompt. `schema` must be non-null exactly when
/// the schema-context variant is requested (reasoning kind only).
std::string build_discrimination_prompt(const std::string& question, const std::string& sql,
                                        const DbSchema* schema, ModelKind kind,
                                        const TemplateSet& templates = TemplateSet::builtin());

/// Non-reasoning scoring: two-way softmax of the next-token logprobs of
/// "Yes" vs "No". Backend transport failure yields the fallback score;
/// missing logprob support propagates as CapabilityError.
DiscriminationScore score_nonreasoning(CompletionBackend& backend, const std::string& prompt);

/// Finds the last well-formed {"correct": true|false} object in the
/// completion, reads the emitted value token's logprob, and recovers the
/// alternative value's logprob from the top alternatives at that position
/// (floor when absent). Every failure mode encodes as verdict=missing.
ReasoningParse parse_reasoning_output(const Completion& completion);

/// P(correct) as the two-way softmax of (true_logprob, false_logprob):
/// an emitted `true` contributes its own probability, an emitted `false` the
/// complement of its own. verdict=missing yields the fallback.
DiscriminationScore soft_score_from_parse(const ReasoningParse& parse);

/// 1.0 for true, 0.0 for false, fallback for missing.
DiscriminationScore binary_score_from_parse(const ReasoningParse& parse);

struct DiscriminationResult {
  DiscriminationScore score;
  std::optional<ReasoningParse> parse;  // present for the reasoning kind
};

/// Full scoring path for one candidate. Non-extractable candidates are scored
/// with the fallback without any backend traffic.
DiscriminationResult discriminate(CompletionBackend& backend, const std::string& question,
                                  const CandidateSql& candidate, const DbSchema* schema,
                                  const DiscriminatorConfig& config,
                                  const TemplateSet& templates = TemplateSet::builtin());

}  // namespace sqlplan
