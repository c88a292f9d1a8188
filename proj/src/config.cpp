#include "config.hpp"

#include <cmath>

#include "error.hpp"
#include "svm.hpp"

namespace entropic {

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, "config: " + what); };
  if (target_len == 1) fail("target_len must be 0 (no subsampling) or at least 2");
  if (k < 2) fail("k must be at least 2");
  if (!(C > 0.0)) fail("C must be positive");
  if (!(tol > 0.0)) fail("tol must be positive");
  if (sigma < 0.0 || !std::isfinite(sigma)) fail("sigma must be non-negative (0 selects the median heuristic)");
  if (degree < 1) fail("degree must be at least 1");
  if (!std::isfinite(offset)) fail("offset must be finite");
  if (jobs == 0) fail("jobs must be at least 1");
  if (split_train_size == 0) fail("split_train_size must be positive");
  if (!(jitter_epsilon > 0.0)) fail("jitter_epsilon must be positive");
  if (!kernel.empty()) kernel_family_from_string(kernel);
}

nlohmann::json to_json(const RunConfig& c) {
  return {
      {"target_len", c.target_len},
      {"seed", c.seed},
      {"k", c.k},
      {"kernel", c.kernel},
      {"C", c.C},
      {"tol", c.tol},
      {"sigma", c.sigma},
      {"degree", c.degree},
      {"offset", c.offset},
      {"jobs", c.jobs},
      {"include_neutral", c.include_neutral},
      {"split_train_size", c.split_train_size},
      {"standardize", c.standardize},
      {"grid_search", c.grid_search},
      {"jitter", c.jitter},
      {"jitter_epsilon", c.jitter_epsilon},
      {"log_base", kLogBase},
      {"out_dir", c.out_dir},
  };
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw Error(ErrorKind::Format, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "target_len") c.target_len = value.get<std::size_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "k") c.k = value.get<std::size_t>();
      else if (key == "kernel") c.kernel = value.get<std::string>();
      else if (key == "C") c.C = value.get<double>();
      else if (key == "tol") c.tol = value.get<double>();
      else if (key == "sigma") c.sigma = value.get<double>();
      else if (key == "degree") c.degree = value.get<int>();
      else if (key == "offset") c.offset = value.get<double>();
      else if (key == "jobs") c.jobs = value.get<std::size_t>();
      else if (key == "include_neutral") c.include_neutral = value.get<bool>();
      else if (key == "split_train_size") c.split_train_size = value.get<std::size_t>();
      else if (key == "standardize") c.standardize = value.get<bool>();
      else if (key == "grid_search") c.grid_search = value.get<bool>();
      else if (key == "jitter") c.jitter = value.get<bool>();
      else if (key == "jitter_epsilon") c.jitter_epsilon = value.get<double>();
      else if (key == "out_dir") c.out_dir = value.get<std::string>();
      else if (key == "log_base") {
        if (value.get<std::string>() != kLogBase) {
          throw Error(ErrorKind::InvalidArgument, "config: only the natural logarithm is supported");
        }
      } else {
        throw Error(ErrorKind::InvalidArgument, "config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace entropic
