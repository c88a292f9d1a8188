#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace entropic {

enum class KernelFamily { Linear = 0, Polynomial = 1, Gaussian = 2 };

/// Kernel family and its parameters. `scale` multiplies every kernel value;
/// it is 1 for the usual forms and exists to express constant-rescaled
/// variants such as the normal-density form of the Gaussian.
struct KernelSpec {
  KernelFamily family = KernelFamily::Linear;
  int degree = 2;       // Polynomial
  double offset = 1.0;  // Polynomial
  double sigma = 1.0;   // Gaussian
  double scale = 1.0;

  static KernelSpec linear() { return {}; }
  static KernelSpec polynomial(int degree, double offset) {
    return {KernelFamily::Polynomial, degree, offset, 1.0, 1.0};
  }
  static KernelSpec gaussian(double sigma) { return {KernelFamily::Gaussian, 2, 1.0, sigma, 1.0}; }

  void validate() const;
  std::string describe() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string& name);

double kernel_eval(const KernelSpec& k, std::span<const double> u, std::span<const double> v);

struct Provenance {
  int actor_id = 0;      // 0 when the point spans several actors
  int emotion = 0;
  int audio_index = -1;  // column of the entropy matrix, -1 when several
  std::vector<std::pair<std::size_t, std::size_t>> cells;  // (row, column) sources
};

struct LabeledPoint {
  std::vector<double> features;
  int label = 0;
  std::optional<Provenance> provenance;
};

struct SvmParams {
  KernelSpec kernel;
  double C = 1.0;
  double tol = 1e-3;

  friend bool operator==(const SvmParams&, const SvmParams&) = default;
};

/// Binary soft-margin model. `coefficients` are label-signed dual
/// coefficients y_i * alpha_i; the first class of `class_pair` is the -1 side.
struct SvmModel {
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> coefficients;
  double bias = 0.0;
  KernelSpec kernel;
  std::pair<int, int> class_pair{0, 1};
  std::size_t dimension = 0;  // 0: unchecked
  std::vector<std::size_t> support_indices;  // rows of the training set, not serialized
  bool converged = true;
  std::size_t iterations = 0;

  double decision_value(std::span<const double> v) const;
  int predict(std::span<const double> v) const;
};

SvmModel train_binary(std::span<const LabeledPoint> data, const SvmParams& params);

struct MulticlassModel {
  std::vector<int> classes;  // ascending
  std::vector<SvmModel> models;  // one per pair (i < j) in lexicographic order

  int predict(std::span<const double> v) const;
  std::vector<int> predict(std::span<const LabeledPoint> points) const;
};

MulticlassModel train_multiclass(std::span<const LabeledPoint> data, const SvmParams& params);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

struct CrossValidation {
  std::vector<double> fold_accuracies;
  double mean = 0.0;
  bool unstratified = false;  // some class had fewer points than folds
};

/// Z-scores every feature with the statistics of `train`; applied to both sets.
void standardize(std::vector<LabeledPoint>& train, std::vector<LabeledPoint>& test);

CrossValidation kfold_cross_validate(std::span<const LabeledPoint> data, const SvmParams& params,
                                     std::size_t k, std::uint64_t seed, bool standardize_features = false);

/// Fold index for every point: seeded shuffle, then class-by-class
/// round-robin dealing so per-fold class counts differ by at most one.
std::vector<std::size_t> assign_folds(std::span<const LabeledPoint> data, std::size_t k, std::uint64_t seed,
                                      bool* unstratified = nullptr);

/// Seeded stratified split into (train, test) index sets with `train_size`
/// training points.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    std::span<const LabeledPoint> data, std::size_t train_size, std::uint64_t seed);

struct KernelGrid {
  std::vector<KernelSpec> kernels;  // evaluated in this order
  std::vector<double> C_values;
};

/// Linear; Polynomial d in {2,3}, c in {0,1}; Gaussian sigma in
/// {0.1 s, s, 10 s} with s the median pairwise distance; C in {0.1,1,10,100}.
KernelGrid default_kernel_grid(std::span<const LabeledPoint> data);

double median_pairwise_distance(std::span<const LabeledPoint> data);

struct GridCell {
  SvmParams params;
  CrossValidation cv;
};

struct GridSearchResult {
  SvmParams best;
  double best_accuracy = 0.0;
  std::vector<GridCell> cells;
};

/// Exhaustive grid evaluation; ties keep the earliest cell (kernel order,
/// then C order).
GridSearchResult select_best_kernel(std::span<const LabeledPoint> data, const KernelGrid& grid, std::size_t k,
                                    std::uint64_t seed, std::size_t jobs = 1, double tol = 1e-3,
                                    bool standardize_features = false);

/// Deterministic generator used for every seeded shuffle.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

template <typename T>
void seeded_shuffle(std::vector<T>& items, SeededRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

}  // namespace entropic
