#include "sqlplan/templates.hpp"

#include <filesystem>

#include "sqlplan/util.hpp"

namespace sqlplan {

namespace {

constexpr const char* kGenReasoning =
    "Answer the question by generating a valid sqlite SQL query. "
    "Final answer must start with SELECT.\n"
    "### Schema:\n"
    "{{schema}}\n"
    "\n"
    "### Question: {{question}}\n"
    "\n"
    "<think>\n"
    "Okay, ";

constexpr const char* kGenNonReasoning =
    "[INST] Given database schema and a question in natural language, generate the "
    "corresponding SQL query.\n"
    "\n"
    "-- Database {{db_id}}:\n"
    "{{schema}}\n"
    "-- Question: {{question}}\n"
    "-- SQL:\n"
    " [/INST]";

constexpr const char* kDiscNonReasoning =
    "[INST] Answer the following Yes/No question: Is the SQL correct given the utterance?\n"
    "\n"
    "-- Utterance: {{question}}\n"
    "-- SQL:\n"
    "{{sql}}\n"
    "-- Answer: [/INST]";

constexpr const char* kDiscReasoning =
    "Determine whether the SQL query is correct or not for the given question. "
    "Provide final answer in JSON format with the key 'correct'. For this task do the "
    "following:\n"
    "- First, break down the query step by step\n"
    "- Then, determine if the query provides the answer to the given question.\n"
    "You only need to determine in terms of correctness, if query is correct or not. "
    "Do not generate alternative query.\n"
    "\n"
    "### Question:\n"
    "{{question}}\n"
    "### SQL query:\n"
    "{{sql}}\n"
    "\n"
    "<think>\n"
    "Okay, ";

constexpr const char* kDiscReasoningSchema =
    "Determine whether the SQL query is correct or not for the given question. "
    "Provide final answer in JSON format with the key 'correct'.\n"
    "For this task do the following:\n"
    "- First, break down the query step by step. Use the Schema for this.\n"
    "- Then, determine if the query provides the answer to the given question.\n"
    "You only need to determine in terms of correctness, if query is correct or not. "
    "Do not generate alternative query.\n"
    "\n"
    "### Schema:\n"
    "{{schema}}\n"
    "### Question:\n"
    "{{question}}\n"
    "### SQL query:\n"
    "{{sql}}\n"
    "\n"
    "<think>\n"
    "Okay, ";

}  // namespace

const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet set = [] {
    TemplateSet t;
    t.version = "builtin-v1";
    t.gen_reasoning = kGenReasoning;
    t.gen_nonreasoning = kGenNonReasoning;
    t.disc_nonreasoning = kDiscNonReasoning;
    t.disc_reasoning = kDiscReasoning;
    t.disc_reasoning_schema = kDiscReasoningSchema;
    return t;
  }();
  return set;
}

TemplateSet TemplateSet::from_dir(const std::string& dir) {
  auto load = [&dir](const char* name) {
    return read_file((std::filesystem::path(dir) / name).string());
  };
  TemplateSet t;
  t.version = "dir:" + dir;
  t.gen_reasoning = load("gen_reasoning.tmpl");
  t.gen_nonreasoning = load("gen_nonreasoning.tmpl");
  t.disc_nonreasoning = load("disc_nonreasoning.tmpl");
  t.disc_reasoning = load("disc_reasoning.tmpl");
  t.disc_reasoning_schema = load("disc_reasoning_schema.tmpl");
  return t;
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t open = tmpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tmpl, pos, std::string::npos);
      break;
    }
    std::size_t close = tmpl.find("}}", open);
    if (close == std::string::npos) {
      throw ConfigError("template: unterminated placeholder");
    }
    out.append(tmpl, pos, open - pos);
    std::string key = tmpl.substr(open + 2, close - open - 2);
    auto it = vars.find(key);
    if (it == vars.end()) throw ConfigError("template: unknown placeholder {{" + key + "}}");
    out += it->second;
    pos = close + 2;
  }
  return out;
}

}  // namespace sqlplan
