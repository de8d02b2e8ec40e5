#pragma once

#include <string>

#include "sqlplan/config.hpp"

namespace sqlplan::demo {

/// Offline evaluation corpora: two small SQLite databases plus Spider-format
/// dataset files and scripted mock-backend fixtures, so every harness mode
/// runs without a live model. Each writer fills `dir` with examples.json,
/// tables.json, the database tree under db/, fixture.json and (where the mode
/// needs one) candidates.jsonl, and returns a ready-to-run config.

/// Eight examples, five sampled candidates each, mixed outcomes. Drives the
/// end-to-end pipeline demo and its regression baseline.
ExperimentConfig write_e2e_corpus(const std::string& dir);

/// Four examples x three pre-generated candidates with fixed logprob pairs;
/// intrinsic metrics are worked out by hand for this corpus.
ExperimentConfig write_intrinsic_corpus(const std::string& dir);

/// Forty single-candidate examples whose scripted reasoning lengths span
/// 250..1200 tokens, so budget sweeps truncate a controlled fraction.
ExperimentConfig write_sweep_corpus(const std::string& dir);

/// Ten examples where the naive top choice is invalid SQL in six of them;
/// contrasts the naive and executability-checked planner modes.
ExperimentConfig write_dominance_corpus(const std::string& dir);

/// Creates a SQLite database file from DDL/DML statements (test/demo setup
/// only; the harness itself opens databases read-only).
void build_database(const std::string& path, const std::vector<std::string>& statements);

/// Materializes just the two demo databases under <db_root>/<db_id>/... so a
/// committed corpus (which carries no binary files) can be executed.
void write_demo_databases(const std::string& db_root);

}  // namespace sqlplan::demo
