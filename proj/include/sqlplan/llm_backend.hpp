#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sqlplan {

enum class FinishReason { stop, length, backend_error };

std::string to_string(FinishReason r);

struct TokenLogprob {
  std::string text;
  double logprob = 0.0;
  /// Alternatives at this position (token text -> logprob); empty when the
  /// backend was not asked for top logprobs.
  std::map<std::string, double> top_logprobs;
};

/// One sampled completion. Token texts concatenate to `text` for backends
/// that report tokens; the token list is empty only on backend_error.
struct Completion {
  std::string text;
  std::vector<TokenLogprob> tokens;
  FinishReason finish_reason = FinishReason::stop;
};

struct CompletionRequest {
  std::string prompt;
  int max_new_tokens = 300;
  double temperature = 0.2;
  int n_samples = 1;
  std::vector<std::string> stop_sequences;
};

/// max_new_tokens >= 1, n_samples >= 1, temperature >= 0.
void validate_request(const CompletionRequest& request);

/// Next-token logprob per requested candidate string. Candidates absent from
/// the backend's reported distribution carry the floor value.
struct ChoiceLogprobs {
  std::map<std::string, double> logprobs;
  bool backend_error = false;
};

/// Logprob assigned to candidates the backend's top-k never mentions. Keeps a
/// two-way softmax well-defined while pinning the missing side near zero mass.
constexpr double kFloorLogprob = -100.0;

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  /// Returns n_samples completions. Transport or protocol failures surface as
  /// backend_error completions, never as exceptions.
  virtual std::vector<Completion> complete(const CompletionRequest& request) = 0;

  /// Logprob of each candidate as the next token at the prompt boundary.
  /// Multi-token candidates are scored by their first token. Throws
  /// CapabilityError when the backend reports no logprobs at all.
  ChoiceLogprobs choice_logprobs(const std::string& prompt,
                                 const std::vector<std::string>& candidates);

  virtual std::string describe() const = 0;
};

/// "mock:<fixture path>" or an http(s) completions endpoint URL.
std::unique_ptr<CompletionBackend> make_backend(const std::string& descriptor,
                                                const std::string& model = "");

}  // namespace sqlplan
