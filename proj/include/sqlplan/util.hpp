#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqlplan {

/// Input files (dataset, fixtures, artifacts) that cannot be parsed.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Backend cannot satisfy a required capability (e.g. token logprobs).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Run persistence failure (IO).
struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix);
std::vector<std::string> split(std::string_view s, char sep);

/// Hex-encoded SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

/// Neumaier-compensated sum; mean() of an empty sequence is 0.
class CompensatedSum {
 public:
  void add(double x);
  double sum() const { return sum_ + compensation_; }
  double mean() const { return count_ ? sum() / static_cast<double>(count_) : 0.0; }
  std::size_t count() const { return count_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  std::size_t count_ = 0;
};

double mean_of(std::span<const double> values);

/// Two-way softmax: probability of the side with logprob `lp_a` against `lp_b`.
double two_way_softmax(double lp_a, double lp_b);

/// Deterministic bounded draw in [0, n) from a mt19937 stream (rejection sampling,
/// identical across platforms).
std::uint32_t bounded_uniform(std::uint32_t n, const std::function<std::uint32_t()>& next);

/// Runs fn(i) for i in [0, n) with at most `concurrency` worker threads.
/// fn must be safe to call concurrently for distinct i.
void parallel_for_indexed(std::size_t n, int concurrency, const std::function<void(std::size_t)>& fn);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// ISO-8601 UTC timestamp of the current wall clock.
std::string iso8601_now();

}  // namespace sqlplan
