#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace entropic {

/// A 1-D real signal. Samples are finite and non-empty; audio-derived
/// signals are normalized to [-1, 1]. A sample rate of 0 marks rate-less
/// input (CSV).
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate, std::string source_id = {});

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double sample_rate() const noexcept { return sample_rate_; }
  const std::string& source_id() const noexcept { return source_id_; }

 private:
  std::vector<double> samples_;
  double sample_rate_;
  std::string source_id_;
};

/// Samples plus a strict total order on indices: rank(i) < rank(j) iff
/// (samples[i], i) < (samples[j], j) lexicographically.
struct CanonicalSignal {
  std::vector<double> samples;
  std::vector<std::size_t> rank;   // index -> rank
  std::vector<std::size_t> order;  // rank -> index

  std::size_t size() const noexcept { return samples.size(); }
};

inline constexpr std::size_t kDefaultTargetLength = 10000;
inline constexpr double kDefaultJitterEpsilon = 1e-9;

Signal load_wav(const std::filesystem::path& path);
Signal load_csv_signal(const std::filesystem::path& path);

/// Dispatches on extension: ".wav" (any case) is decoded as audio, anything
/// else is read as a one-value-per-line CSV.
Signal load_signal(const std::filesystem::path& path);

/// Keeps the samples at round_half_up(k * (n - 1) / (target_len - 1)) for
/// k = 0 .. target_len - 1. First and last samples are always retained.
Signal subsample(const Signal& s, std::size_t target_len);

CanonicalSignal canonicalize(const Signal& s);

/// Literal additive perturbation: sample i is shifted by
/// epsilon * range * (i + 1) / n. Cross-check for the symbolic tie-break.
Signal jitter(const Signal& s, double epsilon = kDefaultJitterEpsilon);

}  // namespace entropic
