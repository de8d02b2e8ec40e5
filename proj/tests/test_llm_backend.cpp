#include "doctest.h"
#include "json.hpp"
#include "sqlplan/mock_backend.hpp"
#include "sqlplan/util.hpp"
#include "support/test_env.hpp"

using namespace sqlplan;
using nlohmann::json;

namespace {

std::string write_fixture(const std::filesystem::path& dir, const json& rules) {
  auto path = (dir / "fixture.json").string();
  write_file(path, json{{"rules", rules}}.dump(2));
  return path;
}

CompletionRequest request_for(const std::string& prompt, int budget = 100, int n = 1) {
  CompletionRequest req;
  req.prompt = prompt;
  req.max_new_tokens = budget;
  req.n_samples = n;
  req.temperature = 0.0;
  return req;
}

}  // namespace

TEST_CASE("mock exact-hash rule replays the scripted completion") {
  auto dir = test::scratch_dir("mock_exact");
  json rules = json::array({json{
      {"match", {{"exact_prompt_sha256", sha256_hex("prompt P")}}},
      {"response_text", "SELECT 1;"},
      {"finish_reason", "stop"},
  }});
  MockBackend backend(write_fixture(dir, rules));

  auto out = backend.complete(request_for("prompt P"));
  REQUIRE(out.size() == 1);
  CHECK(out[0].text == "SELECT 1;");
  CHECK(out[0].finish_reason == FinishReason::stop);
  std::string joined;
  for (const auto& t : out[0].tokens) joined += t.text;
  CHECK(joined == "SELECT 1;");

  // Unmatched prompt degrades to a backend_error completion, never a throw.
  auto missing = backend.complete(request_for("unknown"));
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].finish_reason == FinishReason::backend_error);
  CHECK(missing[0].text.empty());
  CHECK(missing[0].tokens.empty());
}

TEST_CASE("mock truncates to the token budget with finish_reason=length") {
  auto dir = test::scratch_dir("mock_budget");
  json rules = json::array({json{
      {"match", {{"regex", ".*"}}},
      {"response_text", "one two three four"},
      {"finish_reason", "stop"},
  }});
  MockBackend backend(write_fixture(dir, rules));

  auto full = backend.complete(request_for("x", 100));
  CHECK(full[0].finish_reason == FinishReason::stop);
  std::size_t total_tokens = full[0].tokens.size();
  CHECK(total_tokens > 2);

  auto one = backend.complete(request_for("x", 1));
  CHECK(one[0].tokens.size() == 1);
  CHECK(one[0].finish_reason == FinishReason::length);

  // Prefix property: smaller budgets are prefixes of larger ones.
  auto b2 = backend.complete(request_for("x", 2))[0];
  auto b3 = backend.complete(request_for("x", 3))[0];
  REQUIRE(b2.tokens.size() == 2);
  REQUIRE(b3.tokens.size() == 3);
  for (std::size_t i = 0; i < 2; ++i) CHECK(b2.tokens[i].text == b3.tokens[i].text);
  CHECK(b3.text.rfind(b2.text, 0) == 0);
}

TEST_CASE("mock is referentially transparent and cycles multi-responses") {
  auto dir = test::scratch_dir("mock_multi");
  json rules = json::array({json{
      {"match", {{"regex", "^gen"}}},
      {"responses", json::array({
                        json{{"response_text", "SELECT a;"}, {"finish_reason", "stop"}},
                        json{{"response_text", "SELECT b;"}, {"finish_reason", "stop"}},
                    })},
  }});
  MockBackend backend(write_fixture(dir, rules));

  auto batch = backend.complete(request_for("gen x", 100, 5));
  REQUIRE(batch.size() == 5);
  CHECK(batch[0].text == "SELECT a;");
  CHECK(batch[1].text == "SELECT b;");
  CHECK(batch[2].text == "SELECT a;");
  CHECK(batch[4].text == "SELECT a;");

  auto again = backend.complete(request_for("gen x", 100, 5));
  for (std::size_t i = 0; i < 5; ++i) CHECK(batch[i].text == again[i].text);
}

TEST_CASE("mock validates fixtures") {
  auto dir = test::scratch_dir("mock_invalid");
  json bad_lp = json::array({json{
      {"match", {{"regex", ".*"}}},
      {"response_text", "x"},
      {"token_texts", {"x"}},
      {"token_logprobs", {0.5}},
  }});
  CHECK_THROWS_AS(MockBackend(write_fixture(dir, bad_lp)), LoadError);

  json mismatched = json::array({json{
      {"match", {{"regex", ".*"}}},
      {"response_text", "xy"},
      {"token_texts", {"x"}},
      {"token_logprobs", {-0.1}},
  }});
  CHECK_THROWS_AS(MockBackend(write_fixture(dir, mismatched)), LoadError);
}

TEST_CASE("synthesize_tokens concatenates back to the input") {
  for (const std::string text :
       {std::string("SELECT a FROM t;"), std::string("  spaced   out  "), std::string(""),
        std::string("mixed_words, punct!and\nnewlines")}) {
    auto tokens = synthesize_tokens(text);
    std::string joined;
    for (const auto& t : tokens) joined += t;
    CHECK(joined == text);
  }
}

TEST_CASE("choice_logprobs reads the next-token distribution") {
  auto dir = test::scratch_dir("mock_choice");
  json rules = json::array({
      json{{"match", {{"exact_prompt_sha256", sha256_hex("uniform")}}},
           {"response_text", "Yes"},
           {"token_texts", {"Yes"}},
           {"token_logprobs", {-0.693147}},
           {"token_top_logprobs",
            json::array({json{{"Yes", -0.693147}, {"No", -0.693147}}})},
           {"finish_reason", "stop"}},
      json{{"match", {{"exact_prompt_sha256", sha256_hex("single")}}},
           {"response_text", "Yes"},
           {"token_texts", {"Yes"}},
           {"token_logprobs", {-0.105}},
           {"finish_reason", "stop"}},
  });
  MockBackend backend(write_fixture(dir, rules));

  auto uniform = backend.choice_logprobs("uniform", {"Yes", "No"});
  CHECK_FALSE(uniform.backend_error);
  CHECK(uniform.logprobs.at("Yes") == doctest::Approx(uniform.logprobs.at("No")));

  auto single = backend.choice_logprobs("single", {"Yes"});
  CHECK(single.logprobs.at("Yes") == doctest::Approx(-0.105));

  // Candidate absent from the distribution floors out.
  auto floored = backend.choice_logprobs("single", {"Yes", "No"});
  CHECK(floored.logprobs.at("No") == doctest::Approx(kFloorLogprob));

  // Unmatched prompt -> backend_error flag.
  auto err = backend.choice_logprobs("unknown", {"Yes", "No"});
  CHECK(err.backend_error);
}

TEST_CASE("make_backend dispatches descriptors") {
  auto dir = test::scratch_dir("mock_descriptor");
  json rules = json::array();
  auto path = write_fixture(dir, rules);
  auto backend = make_backend("mock:" + path);
  CHECK(backend->describe() == "mock:" + path);
  CHECK_THROWS_AS(make_backend("ftp://nope"), ConfigError);
}
