#pragma once

// Brute-force reference implementations of the ranking metrics, kept
// deliberately independent of the library's code paths: ranking is done by
// counting dominations instead of sorting, F1 goes through explicit
// precision/recall. Used to cross-check the production metrics on random
// synthetic batches.

#include <cstdint>
#include <optional>
#include <vector>

namespace sqlplan::test {

struct RefCandidate {
  double score = 0.0;       // -0.5 encodes the failure sentinel
  bool failed = false;
  bool oracle_correct = false;
};

using RefBatch = std::vector<RefCandidate>;

std::optional<double> ref_pairwise_accuracy(const std::vector<RefBatch>& batches);
std::optional<double> ref_macro_f1(const std::vector<RefBatch>& batches, double threshold);
double ref_hit_at_1(const std::vector<RefBatch>& batches);
double ref_mrr(const std::vector<RefBatch>& batches);

/// Deterministic synthetic batches: up to max_candidates per batch, scores on
/// a coarse grid (ties are frequent), sprinkled failure sentinels and random
/// labels.
std::vector<RefBatch> make_synthetic_batches(std::size_t count, std::size_t max_candidates,
                                             std::uint32_t seed);

}  // namespace sqlplan::test
