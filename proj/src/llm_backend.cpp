#include "sqlplan/llm_backend.hpp"

#include "sqlplan/http_backend.hpp"
#include "sqlplan/mock_backend.hpp"
#include "sqlplan/util.hpp"

namespace sqlplan {

void validate_request(const CompletionRequest& request) {
  if (request.max_new_tokens < 1) throw ConfigError("completion request: max_new_tokens must be >= 1");
  if (request.n_samples < 1) throw ConfigError("completion request: n_samples must be >= 1");
  if (request.temperature < 0.0) throw ConfigError("completion request: temperature must be >= 0");
}

std::string to_string(FinishReason r) {
  switch (r) {
    case FinishReason::stop: return "stop";
    case FinishReason::length: return "length";
    case FinishReason::backend_error: return "backend_error";
  }
  return "stop";
}

namespace {

std::string strip_leading_ws(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return std::string(s.substr(i));
}

}  // namespace

ChoiceLogprobs CompletionBackend::choice_logprobs(const std::string& prompt,
                                                  const std::vector<std::string>& candidates) {
  if (candidates.empty()) throw ConfigError("choice_logprobs: no candidates given");

  CompletionRequest req;
  req.prompt = prompt;
  req.max_new_tokens = 1;
  req.temperature = 0.0;
  req.n_samples = 1;
  auto completions = complete(req);

  ChoiceLogprobs out;
  if (completions.empty() || completions.front().finish_reason == FinishReason::backend_error) {
    out.backend_error = true;
    for (const auto& c : candidates) out.logprobs[c] = kFloorLogprob;
    return out;
  }
  const Completion& completion = completions.front();
  if (completion.tokens.empty()) {
    throw CapabilityError(
        "backend '" + describe() +
        "' returned no token logprobs; use the mock backend or a completions server "
        "that supports logprobs/top_logprobs");
  }

  // Distribution at the prompt boundary: the emitted first token plus its
  // reported alternatives.
  const TokenLogprob& first = completion.tokens.front();
  std::map<std::string, double> dist = first.top_logprobs;
  dist.emplace(first.text, first.logprob);

  for (const auto& candidate : candidates) {
    double best = kFloorLogprob;
    std::size_t best_len = 0;
    for (const auto& [token, lp] : dist) {
      std::string key = strip_leading_ws(token);
      if (key.empty()) continue;
      // Exact candidate, or the candidate's first token (longest prefix wins).
      if (key == candidate || (candidate.size() > key.size() && candidate.rfind(key, 0) == 0)) {
        if (key.size() >= best_len) {
          best = lp;
          best_len = key.size();
        }
      }
    }
    out.logprobs[candidate] = best;
  }
  return out;
}

std::unique_ptr<CompletionBackend> make_backend(const std::string& descriptor,
                                                const std::string& model) {
  if (descriptor.rfind("mock:", 0) == 0) {
    return std::make_unique<MockBackend>(descriptor.substr(5));
  }
  if (descriptor.rfind("http://", 0) == 0 || descriptor.rfind("https://", 0) == 0) {
    return std::make_unique<HttpBackend>(descriptor, model);
  }
  throw ConfigError("backend descriptor must be 'mock:<fixture path>' or an http(s) URL, got: " +
                    descriptor);
}

}  // namespace sqlplan
