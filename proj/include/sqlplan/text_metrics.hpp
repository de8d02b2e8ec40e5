#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sqlplan {

/// Lowercased, whitespace-normalized sentences split on terminal punctuation
/// (kept attached) and newlines.
std::vector<std::string> segment_sentences(const std::string& text);

/// Lowercased word and single-punctuation tokens.
std::vector<std::string> tokenize(const std::string& text);

/// 100 * (1 - unique/total) over sentences; empty -> 0.
double repetition_ratio(const std::vector<std::string>& sentences);

/// 100 * (1 - unique/total) over tokens; empty -> 0.
double one_minus_ttr(const std::vector<std::string>& tokens);

/// 100 * (1 - unique/total) over the sliding n-gram multiset; fewer than n
/// tokens -> 0.
double repeated_ngrams(const std::vector<std::string>& tokens, std::size_t n = 3);

/// Shannon entropy (bits) of the sentence occurrence distribution; empty -> 0.
double sentence_entropy(const std::vector<std::string>& sentences);

class Embedder {
 public:
  virtual ~Embedder() = default;
  /// One vector per input sentence; all vectors share a dimension.
  virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& sentences) = 0;
  virtual std::string describe() const = 0;
};

/// Deterministic corpus-level TF-IDF embedder (vocabulary and document
/// frequencies from the sentence list itself, smoothed idf, L2-normalized).
class TfidfEmbedder : public Embedder {
 public:
  std::vector<std::vector<double>> embed(const std::vector<std::string>& sentences) override;
  std::string describe() const override { return "tfidf"; }
};

/// 100 * (1 - mean pairwise cosine similarity) over unordered vector pairs;
/// absent for fewer than two vectors.
std::optional<double> diversity_from_vectors(const std::vector<std::vector<double>>& vectors);

/// Convenience wrapper: embed then diversity_from_vectors. Embedder failures
/// yield absent.
std::optional<double> embedding_diversity(const std::vector<std::string>& sentences,
                                          Embedder& embedder);

struct ReasoningQualityReport {
  double repetition_ratio = 0.0;
  double one_minus_ttr = 0.0;
  double repeated_ngrams = 0.0;
  double entropy = 0.0;
  std::optional<double> diversity;
};

/// Quality metrics of one chain-of-thought trace.
ReasoningQualityReport quality_of_trace(const std::string& text, Embedder& embedder);

/// Unweighted mean across traces; diversity averages the traces where it is
/// defined. Absent when the trace list is empty.
std::optional<ReasoningQualityReport> mean_quality(
    const std::vector<ReasoningQualityReport>& traces);

}  // namespace sqlplan
