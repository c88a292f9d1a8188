#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "signal.hpp"

namespace entropic {

/// Effective settings of a run. Serializes to a single JSON object; unknown
/// keys are rejected so typos in config files surface immediately.
struct RunConfig {
  std::size_t target_len = kDefaultTargetLength;
  std::uint64_t seed = 1;
  std::size_t k = 5;
  std::string kernel;  // empty: the experiment's own default
  double C = 1.0;
  double tol = 1e-3;
  double sigma = 0.0;  // 0: median pairwise distance of the training features
  int degree = 2;
  double offset = 1.0;
  std::size_t jobs = 1;
  bool include_neutral = true;
  std::size_t split_train_size = 40;
  bool standardize = false;
  bool grid_search = true;
  bool jitter = false;
  double jitter_epsilon = kDefaultJitterEpsilon;
  std::string out_dir;

  void validate() const;
};

inline constexpr const char* kLogBase = "natural";

nlohmann::json to_json(const RunConfig& c);
/// Starts from `base` and overrides every key present in `j`.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

}  // namespace entropic
