#include "sqlplan/mock_backend.hpp"

#include "json.hpp"
#include "sqlplan/util.hpp"

namespace sqlplan {

using nlohmann::json;

namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

Completion parse_response(const json& rec, const std::string& path) {
  Completion c;
  if (!rec.contains("response_text") || !rec["response_text"].is_string())
    throw LoadError("mock fixture " + path + ": response missing `response_text`");
  c.text = rec["response_text"].get<std::string>();

  std::string finish = rec.value("finish_reason", std::string("stop"));
  if (finish == "stop") c.finish_reason = FinishReason::stop;
  else if (finish == "length") c.finish_reason = FinishReason::length;
  else if (finish == "backend_error") c.finish_reason = FinishReason::backend_error;
  else throw LoadError("mock fixture " + path + ": unknown finish_reason '" + finish + "'");

  if (c.finish_reason == FinishReason::backend_error) return c;

  if (rec.contains("token_texts")) {
    const json& texts = rec["token_texts"];
    const json& lps = rec.contains("token_logprobs") ? rec["token_logprobs"] : json::array();
    if (!texts.is_array() || !lps.is_array() || texts.size() != lps.size())
      throw LoadError("mock fixture " + path + ": token_texts/token_logprobs must be "
                      "index-aligned arrays");
    for (std::size_t i = 0; i < texts.size(); ++i) {
      TokenLogprob t;
      t.text = texts[i].get<std::string>();
      t.logprob = lps[i].get<double>();
      if (t.logprob > 0.0)
        throw LoadError("mock fixture " + path + ": token logprob must be <= 0");
      c.tokens.push_back(std::move(t));
    }
    if (rec.contains("token_top_logprobs")) {
      const json& tops = rec["token_top_logprobs"];
      if (!tops.is_array() || tops.size() != c.tokens.size())
        throw LoadError("mock fixture " + path + ": token_top_logprobs must align with "
                        "token_texts");
      for (std::size_t i = 0; i < tops.size(); ++i) {
        if (tops[i].is_null()) continue;
        for (auto it = tops[i].begin(); it != tops[i].end(); ++it) {
          c.tokens[i].top_logprobs[it.key()] = it.value().get<double>();
        }
      }
    }
    std::string joined;
    for (const auto& t : c.tokens) joined += t.text;
    if (joined != c.text)
      throw LoadError("mock fixture " + path + ": token_texts do not concatenate to "
                      "response_text");
  } else {
    for (const auto& piece : synthesize_tokens(c.text)) {
      c.tokens.push_back(TokenLogprob{piece, -0.1, {}});
    }
  }
  return c;
}

Completion truncate_to_budget(const Completion& full, int max_new_tokens) {
  if (full.finish_reason == FinishReason::backend_error) return full;
  if (static_cast<int>(full.tokens.size()) <= max_new_tokens) return full;
  Completion out;
  out.finish_reason = FinishReason::length;
  out.tokens.assign(full.tokens.begin(), full.tokens.begin() + max_new_tokens);
  for (const auto& t : out.tokens) out.text += t.text;
  return out;
}

}  // namespace

std::vector<std::string> synthesize_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i + 1;
    bool word = is_word_char(text[i]);
    while (j < text.size() && is_word_char(text[j]) == word) ++j;
    out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

MockBackend::MockBackend(const std::string& fixture_path) : fixture_path_(fixture_path) {
  json doc;
  try {
    doc = json::parse(read_file(fixture_path));
  } catch (const json::exception& e) {
    throw LoadError("mock fixture " + fixture_path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array())
    throw LoadError("mock fixture " + fixture_path + ": expected {\"rules\": [...]}");

  for (const json& rule_json : doc["rules"]) {
    Rule rule;
    if (!rule_json.contains("match") || !rule_json["match"].is_object())
      throw LoadError("mock fixture " + fixture_path + ": rule missing `match`");
    const json& match = rule_json["match"];
    if (match.contains("exact_prompt_sha256")) {
      rule.is_exact = true;
      rule.exact_sha256 = to_lower(match["exact_prompt_sha256"].get<std::string>());
    } else if (match.contains("regex")) {
      rule.is_exact = false;
      try {
        rule.regex = std::regex(match["regex"].get<std::string>());
      } catch (const std::regex_error& e) {
        throw LoadError("mock fixture " + fixture_path + ": bad regex: " + e.what());
      }
    } else {
      throw LoadError("mock fixture " + fixture_path +
                      ": match must carry exact_prompt_sha256 or regex");
    }
    if (rule_json.contains("responses")) {
      for (const json& r : rule_json["responses"]) {
        rule.responses.push_back(parse_response(r, fixture_path));
      }
      if (rule.responses.empty())
        throw LoadError("mock fixture " + fixture_path + ": empty `responses` array");
    } else {
      rule.responses.push_back(parse_response(rule_json, fixture_path));
    }
    rules_.push_back(std::move(rule));
  }
}

const MockBackend::Rule* MockBackend::find_rule(const std::string& prompt) const {
  std::string hash = sha256_hex(prompt);
  for (const auto& rule : rules_) {
    if (rule.is_exact && rule.exact_sha256 == hash) return &rule;
  }
  for (const auto& rule : rules_) {
    if (!rule.is_exact && std::regex_search(prompt, rule.regex)) return &rule;
  }
  return nullptr;
}

std::vector<Completion> MockBackend::complete(const CompletionRequest& request) {
  calls_.fetch_add(1);
  validate_request(request);
  std::vector<Completion> out;
  const Rule* rule = find_rule(request.prompt);
  for (int i = 0; i < request.n_samples; ++i) {
    if (!rule) {
      out.push_back(Completion{"", {}, FinishReason::backend_error});
      continue;
    }
    const Completion& scripted =
        rule->responses[static_cast<std::size_t>(i) % rule->responses.size()];
    out.push_back(truncate_to_budget(scripted, request.max_new_tokens));
  }
  return out;
}

}  // namespace sqlplan
