#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "signal.hpp"

namespace entropic {

inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

/// Interval [birth, death) of a 0-dimensional class. `death` is
/// kInfiniteDeath for the component that never merges.
struct PersistenceBar {
  double birth = 0.0;
  double death = kInfiniteDeath;

  bool infinite() const noexcept { return death == kInfiniteDeath; }

  friend bool operator==(const PersistenceBar&, const PersistenceBar&) = default;
  friend auto operator<=>(const PersistenceBar&, const PersistenceBar&) = default;
};

struct Barcode {
  std::vector<PersistenceBar> bars;
  double f_max = 0.0;  // largest filtration value; closes infinite bars at f_max + 1

  /// Bars ordered by (birth, death).
  std::vector<PersistenceBar> sorted_bars() const;
};

/// 0-dimensional persistence of the lower-star filtration on the path
/// complex. Union-find over vertices taken in canonical order; the root of
/// each set carries its oldest vertex so the younger component dies at a merge.
Barcode lower_star_barcode(const CanonicalSignal& c);

inline constexpr std::size_t kBruteforceMaxLength = 4096;

/// Quadratic reference: recomputes the connected components of every sublevel
/// subgraph from scratch and diffs consecutive thresholds.
Barcode barcode_bruteforce_oracle(const CanonicalSignal& c);

/// Shannon entropy (nats) of the normalized bar lengths, infinite bars
/// closed at f_max + 1.
double persistent_entropy(const Barcode& b);

/// subsample -> canonicalize -> barcode -> entropy. A target length of 0 or
/// one not below the signal length disables subsampling. With a jitter
/// epsilon the subsampled signal is perturbed literally before ranking.
double signal_entropy(const Signal& s, std::size_t target_len = kDefaultTargetLength,
                      std::optional<double> jitter_epsilon = std::nullopt);

/// The barcode stage of `signal_entropy`, for callers that also need the bars.
Barcode signal_barcode(const Signal& s, std::size_t target_len = kDefaultTargetLength,
                       std::optional<double> jitter_epsilon = std::nullopt);

/// "birth,death" header, one bar per line sorted by (birth, death),
/// infinite deaths written as "inf".
std::string barcode_to_csv(const Barcode& b);

/// Shortest decimal text that round-trips the double.
std::string format_real(double v);

}  // namespace entropic
