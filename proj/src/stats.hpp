#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dataset_types.hpp"

namespace entropic {

/// Pearson correlation with sample (n - 1) normalization. Throws a Domain
/// error when either sequence is constant.
double pearson(std::span<const double> a, std::span<const double> b);

/// Row-major square matrix of Pearson coefficients between actor rows.
struct CorrelationMatrix {
  std::size_t size = 0;
  std::vector<double> values;
  std::vector<int> actor_ids;

  double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
};

/// Symmetric with an exact unit diagonal. Every row must be complete.
CorrelationMatrix correlation_matrix(const EntropyMatrix& m);

struct SexGroupedMeans {
  // Index 0 is male, 1 is female.
  std::array<std::array<double, 2>, 2> mean{};
  std::array<std::array<bool, 2>, 2> defined{};
  std::array<std::size_t, 2> group_sizes{};
};

/// Mean of off-diagonal correlations within each (sex, sex) block.
SexGroupedMeans sex_grouped_correlation_means(const CorrelationMatrix& corr, std::span<const Sex> sexes);

struct BoxplotSummary {
  std::string group;
  Emotion emotion = Emotion::Neutral;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::vector<double> outliers;
};

/// Linear interpolation between order statistics at 1 + p (n - 1).
double quantile(std::vector<double> values, double p);

BoxplotSummary summarize(std::vector<double> values);

/// One summary per matrix column (over actors), ordered by emotion then column.
std::vector<BoxplotSummary> boxplot_by_audio(const EntropyMatrix& m);

/// One summary per emotion, pooling every cell of that emotion.
std::vector<BoxplotSummary> boxplot_by_emotion(const EntropyMatrix& m);

std::string correlation_to_csv(const CorrelationMatrix& corr);
std::string sex_means_to_csv(const SexGroupedMeans& means);
std::string boxplot_to_csv(std::span<const BoxplotSummary> rows);

}  // namespace entropic
