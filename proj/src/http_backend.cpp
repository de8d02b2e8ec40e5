#include "sqlplan/http_backend.hpp"

#include <algorithm>
#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "sqlplan/util.hpp"

namespace sqlplan {

using nlohmann::json;

namespace {

std::vector<Completion> error_batch(int n) {
  std::vector<Completion> out;
  for (int i = 0; i < std::max(n, 1); ++i) {
    out.push_back(Completion{"", {}, FinishReason::backend_error});
  }
  return out;
}

FinishReason parse_finish(const std::string& s) {
  if (s == "length") return FinishReason::length;
  return FinishReason::stop;
}

Completion parse_choice(const json& choice) {
  Completion c;
  c.text = choice.value("text", std::string());
  c.finish_reason = parse_finish(choice.value("finish_reason", std::string("stop")));
  // A reply without logprob arrays still carries text; the token list stays
  // empty and logprob-dependent operations raise a capability error.
  if (!choice.contains("logprobs") || !choice["logprobs"].is_object()) {
    return c;
  }
  const json& lp = choice["logprobs"];
  const json& tokens = lp.value("tokens", json::array());
  const json& token_lps = lp.value("token_logprobs", json::array());
  const json& tops = lp.value("top_logprobs", json::array());
  for (std::size_t i = 0; i < tokens.size() && i < token_lps.size(); ++i) {
    TokenLogprob t;
    t.text = tokens[i].get<std::string>();
    // Some servers report tiny positive values for near-certain tokens.
    t.logprob = token_lps[i].is_null() ? 0.0 : std::min(token_lps[i].get<double>(), 0.0);
    if (i < tops.size() && tops[i].is_object()) {
      for (auto it = tops[i].begin(); it != tops[i].end(); ++it) {
        if (it.value().is_number()) {
          t.top_logprobs[it.key()] = std::min(it.value().get<double>(), 0.0);
        }
      }
    }
    c.tokens.push_back(std::move(t));
  }
  return c;
}

}  // namespace

HttpBackend::HttpBackend(const std::string& base_url, std::string model, int top_logprobs,
                         int timeout_seconds)
    : base_url_(base_url),
      model_(std::move(model)),
      top_logprobs_(top_logprobs),
      timeout_seconds_(timeout_seconds) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("backend URL missing scheme: " + base_url);
  auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    host_prefix_ = base_url;
    request_path_ = "/v1/completions";
  } else {
    host_prefix_ = base_url.substr(0, path_start);
    request_path_ = base_url.substr(path_start);
    if (request_path_.find("completions") == std::string::npos) {
      if (request_path_.back() == '/') request_path_.pop_back();
      request_path_ += request_path_.find("/v1") == std::string::npos ? "/v1/completions"
                                                                      : "/completions";
    }
  }
}

std::vector<Completion> HttpBackend::complete(const CompletionRequest& request) {
  validate_request(request);
  json body = {
      {"prompt", request.prompt},
      {"max_tokens", request.max_new_tokens},
      {"temperature", request.temperature},
      {"n", request.n_samples},
      {"logprobs", top_logprobs_},
  };
  if (!model_.empty()) body["model"] = model_;
  if (!request.stop_sequences.empty()) body["stop"] = request.stop_sequences;

  httplib::Client client(host_prefix_);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  httplib::Headers headers;
  if (const char* token = std::getenv(kBackendTokenEnv); token && *token) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  auto res = client.Post(request_path_, headers, body.dump(), "application/json");
  if (!res || res->status < 200 || res->status >= 300) return error_batch(request.n_samples);

  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::exception&) {
    return error_batch(request.n_samples);
  }
  if (!reply.is_object() || !reply.contains("choices") || !reply["choices"].is_array())
    return error_batch(request.n_samples);

  std::vector<Completion> out;
  for (const json& choice : reply["choices"]) {
    out.push_back(parse_choice(choice));
  }
  // Pad if the server returned fewer choices than asked.
  while (static_cast<int>(out.size()) < request.n_samples) {
    out.push_back(Completion{"", {}, FinishReason::backend_error});
  }
  if (static_cast<int>(out.size()) > request.n_samples) out.resize(static_cast<std::size_t>(request.n_samples));
  return out;
}

}  // namespace sqlplan
