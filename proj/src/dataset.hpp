#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "dataset_types.hpp"
#include "svm.hpp"

namespace entropic {

/// CSV with header path,actor_id,sex,emotion,intensity,statement,repetition.
/// Relative paths resolve against the manifest's directory.
std::vector<RecordingMeta> parse_manifest(const std::filesystem::path& path);

/// Seven two-digit fields "MM-VV-EE-II-SS-RR-AA.wav": emotion EE, intensity
/// II, statement SS, repetition RR, actor AA (odd male, even female).
RecordingMeta parse_ravdess_filename(const std::string& name);

struct DirectoryScan {
  std::vector<RecordingMeta> records;
  std::vector<std::string> skipped;  // .wav files whose names did not parse, with the reason
};

/// Recursively collects every corpus-named .wav under `root`.
DirectoryScan scan_ravdess_directory(const std::filesystem::path& root);

struct FileFailure {
  std::filesystem::path path;
  std::string message;
};

struct EntropyTable {
  EntropyMatrix matrix;
  std::vector<FileFailure> failures;
};

struct EntropyOptions {
  std::size_t target_len = kDefaultTargetLength;
  std::size_t jobs = 1;
  std::optional<double> jitter_epsilon;
};

/// One entropy per recording. Rows are the actors present, columns the
/// distinct script positions present, both sorted; per-file failures are
/// collected and mark their row incomplete.
EntropyTable build_entropy_table(const std::vector<RecordingMeta>& records, const EntropyOptions& options);

struct MissingCell {
  int actor_id;
  AudioColumn column;
};

/// Cells absent from `m`, checked against actors 1..max(actor id, expected_actors)
/// and the columns of `m`.
std::vector<MissingCell> missing_cells(const EntropyMatrix& m, int expected_actors = 0);
std::string describe_missing(const std::vector<MissingCell>& cells);

/// Header "actor,sex,<column labels>"; empty fields mark missing cells.
std::string entropy_table_to_csv(const EntropyMatrix& m);
EntropyMatrix entropy_table_from_csv(const std::string& text);

/// One 1-D point per cell, labeled by emotion.
std::vector<LabeledPoint> build_experiment1(const EntropyMatrix& m, bool include_neutral = true);
/// One point per column: the entropies of all actors for that audio.
std::vector<LabeledPoint> build_experiment2(const EntropyMatrix& m);
/// One point per (actor, non-neutral emotion): that actor's 8 recordings of
/// the emotion in (intensity, statement, repetition) order.
std::vector<LabeledPoint> build_experiment3(const EntropyMatrix& m);

inline constexpr std::size_t kExperiment3Features = 8;

struct PairwiseAccuracy {
  Emotion first;
  Emotion second;
  CrossValidation cv;
};

struct ExperimentResult {
  int experiment = 0;
  SvmParams params;
  std::optional<CrossValidation> cv;
  // Experiment 2 hold-out split.
  std::optional<double> train_accuracy;
  std::optional<double> test_accuracy;
  std::optional<double> full_accuracy;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<PairwiseAccuracy> pairwise;  // Experiment 3
  std::optional<GridSearchResult> grid;
  std::size_t points = 0;
  std::size_t dimension = 0;
  RunConfig config;
};

ExperimentResult run_experiment(int id, const EntropyMatrix& m, const RunConfig& config);

nlohmann::json to_json(const ExperimentResult& r);
nlohmann::json to_json(const GridSearchResult& g);
nlohmann::json to_json(const KernelSpec& k);
/// 7x7 upper-triangular table; row and column headers are emotion names.
std::string pairwise_to_csv(const std::vector<PairwiseAccuracy>& pairs);

/// Kernel selected by the run configuration, falling back to `fallback`
/// when no family is configured. Gaussian sigma 0 resolves to the median
/// pairwise distance of `train`.
KernelSpec configured_kernel(const RunConfig& config, KernelFamily fallback, std::span<const LabeledPoint> train);

std::vector<LabeledPoint> build_experiment(int id, const EntropyMatrix& m, const RunConfig& config);

}  // namespace entropic
