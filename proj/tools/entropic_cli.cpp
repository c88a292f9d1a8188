// entropic-cli: batch front end over the entropic C API.
//
// Exit codes: 0 success, 1 data failure (per-file errors, incomplete
// corpus), 2 invalid invocation or configuration.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entropic/entropic.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataFailure = 1;
constexpr int kExitUsage = 2;

struct CString {
  char* ptr = nullptr;
  ~CString() { entropic_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct SignalDeleter {
  void operator()(entropic_signal* s) const { entropic_signal_free(s); }
};
struct BarcodeDeleter {
  void operator()(entropic_barcode* b) const { entropic_barcode_free(b); }
};
struct TableDeleter {
  void operator()(entropic_table* t) const { entropic_table_free(t); }
};
using SignalPtr = std::unique_ptr<entropic_signal, SignalDeleter>;
using BarcodePtr = std::unique_ptr<entropic_barcode, BarcodeDeleter>;
using TablePtr = std::unique_ptr<entropic_table, TableDeleter>;

class ApiError : public std::runtime_error {
 public:
  ApiError(entropic_status status, const std::string& what) : std::runtime_error(what), status(status) {}
  entropic_status status;
};

void check(entropic_status status, const std::string& context) {
  if (status != ENTROPIC_OK) {
    throw ApiError(status, context + ": " + entropic_last_error());
  }
}

int exit_code_for(entropic_status status) {
  switch (status) {
    case ENTROPIC_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    default:
      return kExitDataFailure;
  }
}

// Flags shared by every subcommand. Each maps onto one config key.
struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::size_t target_len = 0;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::string kernel;
  double C = 0.0;
  double tol = 0.0;
  double sigma = 0.0;
  int degree = 0;
  double offset = 0.0;
  std::size_t jobs = 0;
  std::size_t train_size = 0;
  bool jitter = false;
  bool standardize = false;
  bool no_grid = false;
  bool exclude_neutral = false;

  std::vector<std::pair<CLI::Option*, std::string>> bound;  // option -> config key

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file (flags override it)")
        ->envname("ENTROPIC_CONFIG")
        ->check(CLI::ExistingFile);
    bind(app->add_option("--out-dir", out_dir, "Directory for output files")->envname("ENTROPIC_OUT_DIR"), "out_dir");
    bind(app->add_option("--target-len", target_len, "Subsampled signal length (0 disables)")
             ->envname("ENTROPIC_TARGET_LEN"),
         "target_len");
    bind(app->add_option("--seed", seed, "Seed for shuffles and splits")->envname("ENTROPIC_SEED"), "seed");
    bind(app->add_option("--k", k, "Cross-validation folds")->envname("ENTROPIC_K"), "k");
    bind(app->add_option("--kernel", kernel, "linear | polynomial | gaussian")
             ->envname("ENTROPIC_KERNEL")
             ->check(CLI::IsMember({"linear", "polynomial", "gaussian"})),
         "kernel");
    bind(app->add_option("--C", C, "Soft-margin penalty")->envname("ENTROPIC_C"), "C");
    bind(app->add_option("--tol", tol, "KKT tolerance")->envname("ENTROPIC_TOL"), "tol");
    bind(app->add_option("--sigma", sigma, "Gaussian width (0: median heuristic)")->envname("ENTROPIC_SIGMA"), "sigma");
    bind(app->add_option("--degree", degree, "Polynomial degree")->envname("ENTROPIC_DEGREE"), "degree");
    bind(app->add_option("--offset", offset, "Polynomial offset c")->envname("ENTROPIC_OFFSET"), "offset");
    bind(app->add_option("--jobs", jobs, "Parallel workers")->envname("ENTROPIC_JOBS"), "jobs");
    bind(app->add_option("--train-size", train_size, "Hold-out training size for experiment 2")
             ->envname("ENTROPIC_TRAIN_SIZE"),
         "split_train_size");
    bind(app->add_flag("--jitter", jitter, "Add literal jitter before ranking")->envname("ENTROPIC_JITTER"), "jitter");
    bind(app->add_flag("--standardize", standardize, "Z-score features per training fold")
             ->envname("ENTROPIC_STANDARDIZE"),
         "standardize");
    bind(app->add_flag("--no-grid", no_grid, "Skip the kernel grid search")->envname("ENTROPIC_NO_GRID"),
         "grid_search");
    bind(app->add_flag("--exclude-neutral", exclude_neutral, "Drop neutral from experiment 1")
             ->envname("ENTROPIC_EXCLUDE_NEUTRAL"),
         "include_neutral");
  }

  void bind(CLI::Option* opt, const std::string& key) { bound.emplace_back(opt, key); }

  // defaults < config file < environment < flags
  json overrides() const {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ApiError(ENTROPIC_ERR_INVALID_ARGUMENT, "config file " + config_path + ": " + e.what());
      }
      if (!j.is_object()) throw ApiError(ENTROPIC_ERR_INVALID_ARGUMENT, "config file must hold a JSON object");
    }
    for (const auto& [opt, key] : bound) {
      if (opt->count() == 0) continue;
      if (key == "out_dir") j[key] = out_dir;
      else if (key == "target_len") j[key] = target_len;
      else if (key == "seed") j[key] = seed;
      else if (key == "k") j[key] = k;
      else if (key == "kernel") j[key] = kernel;
      else if (key == "C") j[key] = C;
      else if (key == "tol") j[key] = tol;
      else if (key == "sigma") j[key] = sigma;
      else if (key == "degree") j[key] = degree;
      else if (key == "offset") j[key] = offset;
      else if (key == "jobs") j[key] = jobs;
      else if (key == "split_train_size") j[key] = train_size;
      else if (key == "jitter") j[key] = jitter;
      else if (key == "standardize") j[key] = standardize;
      else if (key == "grid_search") j[key] = !no_grid;
      else if (key == "include_neutral") j[key] = !exclude_neutral;
    }
    return j;
  }

  json effective() const {
    CString resolved;
    check(entropic_config_resolve(overrides().dump().c_str(), &resolved.ptr), "configuration");
    return json::parse(resolved.str());
  }
};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ApiError(ENTROPIC_ERR_IO, "cannot write " + path.string());
  out << content;
}

// Either a file under out_dir or standard output.
void emit(const json& config, const std::string& name, const std::string& content) {
  const std::string dir = config.value("out_dir", "");
  if (dir.empty()) {
    std::cout << content;
  } else {
    write_file(fs::path(dir) / name, content);
  }
}

// Effective config next to the outputs; the timestamp lives only in run.log.
void persist_provenance(const json& config, const std::string& command) {
  const std::string dir = config.value("out_dir", "");
  if (dir.empty()) return;
  write_file(fs::path(dir) / "effective_config.json", config.dump(2) + "\n");
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::ofstream log(fs::path(dir) / "run.log", std::ios::app);
  log << stamp << " " << command << " entropic " << entropic_version() << "\n";
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

int cmd_entropy(const std::vector<std::string>& inputs, const CommonFlags& flags) {
  const json config = flags.effective();
  const std::size_t target = config.at("target_len").get<std::size_t>();
  const double eps = config.at("jitter").get<bool>() ? config.at("jitter_epsilon").get<double>() : 0.0;
  std::string csv = "path,samples,subsampled_to,bars,entropy\n";
  bool all_ok = true;
  for (const std::string& input : inputs) {
    try {
      entropic_signal* raw = nullptr;
      check(entropic_signal_load(input.c_str(), &raw), input);
      SignalPtr signal(raw);
      const std::size_t n = entropic_signal_length(signal.get());
      entropic_barcode* bc = nullptr;
      check(entropic_barcode_compute(signal.get(), target, eps, &bc), input);
      BarcodePtr barcode(bc);
      double entropy = 0.0;
      check(entropic_barcode_entropy(barcode.get(), &entropy), input);
      const std::size_t used = (target == 0 || target >= n) ? n : target;
      csv += input + "," + std::to_string(n) + "," + std::to_string(used) + "," +
             std::to_string(entropic_barcode_size(barcode.get())) + "," + format_double(entropy) + "\n";
    } catch (const ApiError& e) {
      std::cerr << "error: " << e.what() << "\n";
      all_ok = false;
    }
  }
  emit(config, "entropy.csv", csv);
  persist_provenance(config, "entropy");
  return all_ok ? kExitOk : kExitDataFailure;
}

int cmd_barcode(const std::string& input, const CommonFlags& flags) {
  const json config = flags.effective();
  const std::size_t target = config.at("target_len").get<std::size_t>();
  const double eps = config.at("jitter").get<bool>() ? config.at("jitter_epsilon").get<double>() : 0.0;
  entropic_signal* raw = nullptr;
  check(entropic_signal_load(input.c_str(), &raw), input);
  SignalPtr signal(raw);
  entropic_barcode* bc = nullptr;
  check(entropic_barcode_compute(signal.get(), target, eps, &bc), input);
  BarcodePtr barcode(bc);
  CString csv;
  check(entropic_barcode_to_csv(barcode.get(), &csv.ptr), input);
  emit(config, "barcode.csv", csv.str());
  persist_provenance(config, "barcode");
  return kExitOk;
}

TablePtr load_table(const std::string& source, const json& config, bool& had_failures) {
  entropic_table* raw = nullptr;
  CString failures;
  check(entropic_table_build(source.c_str(), config.dump().c_str(), &raw, &failures.ptr), source);
  TablePtr table(raw);
  const json problems = json::parse(failures.str());
  for (const auto& p : problems) {
    std::cerr << "warning: " << p.at("path").get<std::string>() << ": " << p.at("error").get<std::string>() << "\n";
    if (p.at("error").get<std::string>() != "skipped") had_failures = true;
  }
  return table;
}

bool report_missing(const entropic_table* table, int expected_actors) {
  CString missing;
  check(entropic_table_missing(table, expected_actors, &missing.ptr), "completeness check");
  if (missing.str().empty()) return false;
  std::cerr << "error: incomplete corpus; missing cells: " << missing.str() << "\n";
  return true;
}

int cmd_experiment(int id, const std::string& source, const CommonFlags& flags, int expected_actors) {
  json config = flags.effective();
  if (config.value("out_dir", "").empty()) config["out_dir"] = ".";
  bool had_failures = false;
  TablePtr table = load_table(source, config, had_failures);

  CString table_csv;
  check(entropic_table_to_csv(table.get(), &table_csv.ptr), "entropy table");
  emit(config, "entropy_table.csv", table_csv.str());
  if (report_missing(table.get(), expected_actors)) return kExitDataFailure;

  CString result;
  CString pairwise;
  check(entropic_experiment_run(table.get(), id, config.dump().c_str(), &result.ptr, &pairwise.ptr), "experiment");
  emit(config, "experiment" + std::to_string(id) + ".json", result.str() + "\n");
  if (id == 3) emit(config, "pairwise_accuracy.csv", pairwise.str());
  persist_provenance(config, "experiment " + std::to_string(id));
  return had_failures ? kExitDataFailure : kExitOk;
}

int cmd_kernels(int id, const std::string& source, const CommonFlags& flags, int expected_actors) {
  json config = flags.effective();
  if (config.value("out_dir", "").empty()) config["out_dir"] = ".";
  bool had_failures = false;
  TablePtr table = load_table(source, config, had_failures);
  if (report_missing(table.get(), expected_actors)) return kExitDataFailure;
  CString report;
  check(entropic_kernel_report(table.get(), id, config.dump().c_str(), &report.ptr), "kernel report");
  emit(config, "kernels" + std::to_string(id) + ".json", report.str() + "\n");
  persist_provenance(config, "kernels " + std::to_string(id));
  return had_failures ? kExitDataFailure : kExitOk;
}

int cmd_stats(const std::string& table_path, const CommonFlags& flags) {
  json config = flags.effective();
  if (config.value("out_dir", "").empty()) config["out_dir"] = ".";
  std::ifstream in(table_path);
  if (!in) throw ApiError(ENTROPIC_ERR_IO, "cannot open " + table_path);
  std::stringstream text;
  text << in.rdbuf();
  entropic_table* raw = nullptr;
  check(entropic_table_from_csv(text.str().c_str(), &raw), table_path);
  TablePtr table(raw);
  CString corr;
  CString means;
  CString boxes;
  CString warnings;
  check(entropic_stats_run(table.get(), &corr.ptr, &means.ptr, &boxes.ptr, &warnings.ptr), "stats");
  if (!warnings.str().empty()) std::cerr << warnings.str();
  emit(config, "correlation.csv", corr.str());
  emit(config, "sex_means.csv", means.str());
  emit(config, "boxplot.csv", boxes.str());
  persist_provenance(config, "stats");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent entropy of 1-D signals and SVM emotion classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(entropic_version()));

  CommonFlags flags;
  std::vector<std::string> entropy_inputs;
  std::string barcode_input;
  std::string source;
  std::string table_path;
  int experiment_id = 0;
  int expected_actors = 0;

  auto* entropy = app.add_subcommand("entropy", "Persistent entropy of each input signal (.wav or .csv)");
  entropy->add_option("inputs", entropy_inputs, "Signal files")->required();
  flags.attach(entropy);

  auto* barcode = app.add_subcommand("barcode", "0-dimensional lower-star barcode of one signal");
  barcode->add_option("input", barcode_input, "Signal file")->required();
  flags.attach(barcode);

  auto* experiment = app.add_subcommand("experiment", "Run experiment 1, 2 or 3 on a corpus");
  experiment->add_option("id", experiment_id, "Experiment id")->required()->check(CLI::Range(1, 3));
  experiment->add_option("source", source, "Manifest CSV, corpus directory or entropy table CSV")->required();
  experiment->add_option("--actors", expected_actors, "Expected actor count for the completeness check")
      ->envname("ENTROPIC_ACTORS");
  flags.attach(experiment);

  auto* kernels = app.add_subcommand("kernels", "Kernel grid-search report for an experiment's feature set");
  kernels->add_option("id", experiment_id, "Experiment id")->required()->check(CLI::Range(1, 3));
  kernels->add_option("source", source, "Manifest CSV, corpus directory or entropy table CSV")->required();
  kernels->add_option("--actors", expected_actors, "Expected actor count for the completeness check")
      ->envname("ENTROPIC_ACTORS");
  flags.attach(kernels);

  auto* stats = app.add_subcommand("stats", "Correlations, sex-grouped means and box-plots of an entropy table");
  stats->add_option("table", table_path, "Entropy table CSV")->required()->check(CLI::ExistingFile);
  flags.attach(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (entropy->parsed()) return cmd_entropy(entropy_inputs, flags);
    if (barcode->parsed()) return cmd_barcode(barcode_input, flags);
    if (experiment->parsed()) return cmd_experiment(experiment_id, source, flags, expected_actors);
    if (kernels->parsed()) return cmd_kernels(experiment_id, source, flags, expected_actors);
    if (stats->parsed()) return cmd_stats(table_path, flags);
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.status);
  }
  return kExitUsage;
}
