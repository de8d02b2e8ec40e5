#include "sqlplan/text_metrics.hpp"

#include <cmath>
#include <map>
#include <set>

#include "sqlplan/util.hpp"

namespace sqlplan {

namespace {

bool terminal_punct(char c) { return c == '.' || c == '!' || c == '?'; }

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string normalize_ws(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

double repeated_fraction(std::size_t unique, std::size_t total) {
  if (total == 0) return 0.0;
  return 100.0 * (1.0 - static_cast<double>(unique) / static_cast<double>(total));
}

}  // namespace

std::vector<std::string> segment_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::string current;
  auto flush = [&] {
    std::string s = normalize_ws(current);
    if (!s.empty()) sentences.push_back(to_lower(s));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      flush();
    } else if (terminal_punct(c)) {
      current += c;
      // A run of terminal punctuation ends one sentence.
      while (i + 1 < text.size() && terminal_punct(text[i + 1])) {
        current += text[++i];
      }
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return sentences;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      tokens.push_back(to_lower(text.substr(i, j - i)));
      i = j;
    } else {
      tokens.push_back(std::string(1, c));
      ++i;
    }
  }
  return tokens;
}

double repetition_ratio(const std::vector<std::string>& sentences) {
  std::set<std::string> unique(sentences.begin(), sentences.end());
  return repeated_fraction(unique.size(), sentences.size());
}

double one_minus_ttr(const std::vector<std::string>& tokens) {
  std::set<std::string> unique(tokens.begin(), tokens.end());
  return repeated_fraction(unique.size(), tokens.size());
}

double repeated_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  if (n == 0 || tokens.size() < n) return 0.0;
  std::set<std::string> unique;
  std::size_t total = tokens.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) {
    std::string key;
    for (std::size_t j = 0; j < n; ++j) {
      key += tokens[i + j];
      key += '\x1f';
    }
    unique.insert(std::move(key));
  }
  return repeated_fraction(unique.size(), total);
}

double sentence_entropy(const std::vector<std::string>& sentences) {
  if (sentences.empty()) return 0.0;
  std::map<std::string, std::size_t> counts;
  for (const auto& s : sentences) ++counts[s];
  double total = static_cast<double>(sentences.size());
  CompensatedSum acc;
  for (const auto& [_, count] : counts) {
    double p = static_cast<double>(count) / total;
    acc.add(-p * std::log2(p));
  }
  return acc.sum();
}

std::vector<std::vector<double>> TfidfEmbedder::embed(const std::vector<std::string>& sentences) {
  // Vocabulary and document frequency over this corpus.
  std::map<std::string, std::size_t> df;
  std::vector<std::vector<std::string>> sentence_tokens;
  sentence_tokens.reserve(sentences.size());
  for (const auto& s : sentences) {
    sentence_tokens.push_back(tokenize(s));
    std::set<std::string> seen(sentence_tokens.back().begin(), sentence_tokens.back().end());
    for (const auto& t : seen) ++df[t];
  }
  std::map<std::string, std::size_t> vocab_index;
  for (const auto& [term, _] : df) {
    vocab_index.emplace(term, vocab_index.size());
  }
  double n_docs = static_cast<double>(sentences.size());

  std::vector<std::vector<double>> vectors;
  vectors.reserve(sentences.size());
  for (const auto& tokens : sentence_tokens) {
    std::vector<double> vec(vocab_index.size(), 0.0);
    for (const auto& t : tokens) {
      double idf = std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df.at(t)))) + 1.0;
      vec[vocab_index.at(t)] += idf;
    }
    double norm = 0.0;
    for (double v : vec) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (double& v : vec) v /= norm;
    }
    vectors.push_back(std::move(vec));
  }
  return vectors;
}

std::optional<double> diversity_from_vectors(const std::vector<std::vector<double>>& vectors) {
  if (vectors.size() < 2) return std::nullopt;
  CompensatedSum cosines;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      double dot = 0.0, ni = 0.0, nj = 0.0;
      for (std::size_t d = 0; d < vectors[i].size() && d < vectors[j].size(); ++d) {
        dot += vectors[i][d] * vectors[j][d];
        ni += vectors[i][d] * vectors[i][d];
        nj += vectors[j][d] * vectors[j][d];
      }
      double denom = std::sqrt(ni) * std::sqrt(nj);
      cosines.add(denom > 0.0 ? dot / denom : 0.0);
    }
  }
  return 100.0 * (1.0 - cosines.mean());
}

std::optional<double> embedding_diversity(const std::vector<std::string>& sentences,
                                          Embedder& embedder) {
  if (sentences.size() < 2) return std::nullopt;
  try {
    return diversity_from_vectors(embedder.embed(sentences));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

ReasoningQualityReport quality_of_trace(const std::string& text, Embedder& embedder) {
  ReasoningQualityReport report;
  auto sentences = segment_sentences(text);
  auto tokens = tokenize(text);
  report.repetition_ratio = repetition_ratio(sentences);
  report.one_minus_ttr = one_minus_ttr(tokens);
  report.repeated_ngrams = repeated_ngrams(tokens, 3);
  report.entropy = sentence_entropy(sentences);
  report.diversity = embedding_diversity(sentences, embedder);
  return report;
}

std::optional<ReasoningQualityReport> mean_quality(
    const std::vector<ReasoningQualityReport>& traces) {
  if (traces.empty()) return std::nullopt;
  ReasoningQualityReport out;
  CompensatedSum rep, ttr, ngrams, entropy, diversity;
  for (const auto& t : traces) {
    rep.add(t.repetition_ratio);
    ttr.add(t.one_minus_ttr);
    ngrams.add(t.repeated_ngrams);
    entropy.add(t.entropy);
    if (t.diversity) diversity.add(*t.diversity);
  }
  out.repetition_ratio = rep.mean();
  out.one_minus_ttr = ttr.mean();
  out.repeated_ngrams = ngrams.mean();
  out.entropy = entropy.mean();
  if (diversity.count() > 0) out.diversity = diversity.mean();
  return out;
}

}  // namespace sqlplan
