#pragma once

#include <atomic>
#include <regex>
#include <string>
#include <vector>

#include "sqlplan/llm_backend.hpp"

namespace sqlplan {

/// Deterministic scripted backend replaying a fixture file.
///
/// Fixture format: {"rules": [rule, ...]} where each rule is
///   {"match": {"exact_prompt_sha256": "<hex>"} | {"regex": "<ecma regex>"},
///    ...response fields... | "responses": [{...response fields...}, ...]}
/// and a response holds response_text, token_texts, token_logprobs,
/// optional token_top_logprobs (array of {token: logprob} maps, index-aligned
/// with token_texts), and finish_reason. When the token arrays are omitted
/// they are synthesized by splitting response_text into word / non-word runs
/// at logprob -0.1 each.
///
/// Lookup order: exact prompt hash first, then regex rules in file order.
/// Replies are pure functions of the request; budgets below the scripted
/// token count truncate the token prefix and report finish_reason=length.
/// With n_samples > 1 a rule's responses are assigned round-robin.
class MockBackend : public CompletionBackend {
 public:
  explicit MockBackend(const std::string& fixture_path);

  std::vector<Completion> complete(const CompletionRequest& request) override;
  std::string describe() const override { return "mock:" + fixture_path_; }

  /// Completions served so far (for call-count assertions in tests).
  std::size_t calls() const { return calls_.load(); }

 private:
  struct Rule {
    bool is_exact = false;
    std::string exact_sha256;
    std::regex regex;
    std::vector<Completion> responses;
  };

  const Rule* find_rule(const std::string& prompt) const;

  std::string fixture_path_;
  std::vector<Rule> rules_;
  std::atomic<std::size_t> calls_{0};
};

/// Splits text into maximal word ([A-Za-z0-9_]) and non-word runs; the pieces
/// concatenate back to the input. Used for fixture token synthesis.
std::vector<std::string> synthesize_tokens(const std::string& text);

}  // namespace sqlplan
