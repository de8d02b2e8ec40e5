#pragma once

#include <string>
#include <vector>

#include "sqlplan/llm_backend.hpp"

namespace sqlplan {

/// Name of the environment variable holding the bearer token for live
/// backends. The token is attached to requests and never persisted.
constexpr const char* kBackendTokenEnv = "SQLPLAN_BACKEND_TOKEN";

/// OpenAI-compatible /v1/completions client with token logprobs.
///
/// The base URL may or may not already include the /v1/completions path;
/// anything else gets it appended. Transport failures, non-2xx statuses and
/// malformed replies all map to backend_error completions.
class HttpBackend : public CompletionBackend {
 public:
  explicit HttpBackend(const std::string& base_url, std::string model,
                       int top_logprobs = 20, int timeout_seconds = 120);

  std::vector<Completion> complete(const CompletionRequest& request) override;
  std::string describe() const override { return base_url_; }

 private:
  std::string base_url_;
  std::string host_prefix_;   // scheme://host[:port]
  std::string request_path_;  // /...completions
  std::string model_;
  int top_logprobs_;
  int timeout_seconds_;
};

}  // namespace sqlplan
