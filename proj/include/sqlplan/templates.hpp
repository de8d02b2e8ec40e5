#pragma once

#include <map>
#include <string>

namespace sqlplan {

/// Prompt templates for generation and discrimination. The built-in set ships
/// with the harness (mirrored by the templates/ directory in the source tree);
/// from_dir() loads an override. Runs snapshot the active template text into
/// the run record.
///
/// Placeholders: {{db_id}}, {{schema}}, {{question}}, {{sql}}.
struct TemplateSet {
  std::string version;
  std::string gen_reasoning;
  std::string gen_nonreasoning;
  std::string disc_nonreasoning;
  std::string disc_reasoning;
  std::string disc_reasoning_schema;

  static const TemplateSet& builtin();

  /// Loads gen_reasoning.tmpl, gen_nonreasoning.tmpl, disc_nonreasoning.tmpl,
  /// disc_reasoning.tmpl, disc_reasoning_schema.tmpl from `dir`.
  static TemplateSet from_dir(const std::string& dir);
};

/// Replaces every {{key}} with vars.at(key); unknown placeholders are an error.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& vars);

}  // namespace sqlplan
