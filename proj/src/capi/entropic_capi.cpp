#include "entropic/entropic.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "model_io.hpp"
#include "persistence.hpp"
#include "signal.hpp"
#include "stats.hpp"
#include "svm.hpp"

struct entropic_signal {
  entropic::Signal signal;
};

struct entropic_barcode {
  entropic::Barcode barcode;
  std::vector<entropic::PersistenceBar> sorted;
};

struct entropic_model {
  entropic::MulticlassModel model;
};

struct entropic_table {
  entropic::EntropyMatrix matrix;
};

namespace {

thread_local std::string last_error;

entropic_status status_of(entropic::ErrorKind kind) {
  switch (kind) {
    case entropic::ErrorKind::InvalidArgument:
      return ENTROPIC_ERR_INVALID_ARGUMENT;
    case entropic::ErrorKind::Io:
      return ENTROPIC_ERR_IO;
    case entropic::ErrorKind::Format:
      return ENTROPIC_ERR_FORMAT;
    case entropic::ErrorKind::Domain:
      return ENTROPIC_ERR_DOMAIN;
    case entropic::ErrorKind::Incomplete:
      return ENTROPIC_ERR_INCOMPLETE;
  }
  return ENTROPIC_ERR_INTERNAL;
}

template <typename F>
entropic_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return ENTROPIC_OK;
  } catch (const entropic::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return ENTROPIC_ERR_FORMAT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ENTROPIC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ENTROPIC_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw entropic::Error(entropic::ErrorKind::InvalidArgument, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

entropic::KernelSpec to_kernel(const entropic_kernel* k) {
  require(k != nullptr, "kernel is null");
  entropic::KernelSpec spec;
  switch (k->family) {
    case ENTROPIC_KERNEL_LINEAR:
      spec.family = entropic::KernelFamily::Linear;
      break;
    case ENTROPIC_KERNEL_POLYNOMIAL:
      spec.family = entropic::KernelFamily::Polynomial;
      break;
    case ENTROPIC_KERNEL_GAUSSIAN:
      spec.family = entropic::KernelFamily::Gaussian;
      break;
    default:
      throw entropic::Error(entropic::ErrorKind::InvalidArgument, "unknown kernel family");
  }
  spec.degree = k->degree;
  spec.offset = k->offset;
  spec.sigma = k->sigma;
  spec.scale = k->scale;
  spec.validate();
  return spec;
}

std::vector<entropic::LabeledPoint> to_points(const double* features, const int* labels, size_t count, size_t dim) {
  require(count == 0 || (features != nullptr && labels != nullptr), "features or labels are null");
  require(dim > 0, "feature dimension must be positive");
  std::vector<entropic::LabeledPoint> points(count);
  for (size_t i = 0; i < count; ++i) {
    points[i].features.assign(features + i * dim, features + (i + 1) * dim);
    points[i].label = labels[i];
  }
  return points;
}

entropic::RunConfig parse_config(const char* config_json) {
  if (config_json == nullptr || *config_json == '\0') return {};
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    throw entropic::Error(entropic::ErrorKind::Format, std::string("config is not valid JSON: ") + e.what());
  }
  return entropic::config_from_json(j);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw entropic::Error(entropic::ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string first_line(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw entropic::Error(entropic::ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

extern "C" {

const char* entropic_version(void) { return "1.0.0"; }

const char* entropic_last_error(void) { return last_error.c_str(); }

const char* entropic_status_name(entropic_status status) {
  switch (status) {
    case ENTROPIC_OK:
      return "ok";
    case ENTROPIC_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case ENTROPIC_ERR_IO:
      return "i/o error";
    case ENTROPIC_ERR_FORMAT:
      return "format error";
    case ENTROPIC_ERR_DOMAIN:
      return "domain error";
    case ENTROPIC_ERR_INCOMPLETE:
      return "incomplete data";
    case ENTROPIC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void entropic_string_free(char* s) { std::free(s); }

entropic_status entropic_config_resolve(const char* config_json, char** effective_json) {
  return guarded([&] {
    require(effective_json != nullptr, "output pointer is null");
    *effective_json = duplicate(entropic::to_json(parse_config(config_json)).dump(2));
  });
}

entropic_status entropic_signal_load(const char* path, entropic_signal** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new entropic_signal{entropic::load_signal(path)};
  });
}

entropic_status entropic_signal_from_samples(const double* samples, size_t count, double sample_rate,
                                             entropic_signal** out) {
  return guarded([&] {
    require(out != nullptr && (samples != nullptr || count == 0), "null argument");
    *out = new entropic_signal{entropic::Signal(std::vector<double>(samples, samples + count), sample_rate)};
  });
}

size_t entropic_signal_length(const entropic_signal* s) { return s ? s->signal.size() : 0; }

double entropic_signal_sample_rate(const entropic_signal* s) { return s ? s->signal.sample_rate() : 0.0; }

const double* entropic_signal_data(const entropic_signal* s) { return s ? s->signal.samples().data() : nullptr; }

entropic_status entropic_signal_subsample(const entropic_signal* s, size_t target_len, entropic_signal** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = new entropic_signal{entropic::subsample(s->signal, target_len)};
  });
}

entropic_status entropic_signal_canonical_ranks(const entropic_signal* s, size_t* ranks) {
  return guarded([&] {
    require(s != nullptr && ranks != nullptr, "null argument");
    const auto c = entropic::canonicalize(s->signal);
    std::copy(c.rank.begin(), c.rank.end(), ranks);
  });
}

void entropic_signal_free(entropic_signal* s) { delete s; }

entropic_status entropic_barcode_compute(const entropic_signal* s, size_t target_len, double jitter_epsilon,
                                         entropic_barcode** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    std::optional<double> eps;
    if (jitter_epsilon > 0.0) eps = jitter_epsilon;
    auto b = entropic::signal_barcode(s->signal, target_len, eps);
    auto sorted = b.sorted_bars();
    *out = new entropic_barcode{std::move(b), std::move(sorted)};
  });
}

entropic_status entropic_barcode_bruteforce(const entropic_signal* s, entropic_barcode** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    auto b = entropic::barcode_bruteforce_oracle(entropic::canonicalize(s->signal));
    auto sorted = b.sorted_bars();
    *out = new entropic_barcode{std::move(b), std::move(sorted)};
  });
}

size_t entropic_barcode_size(const entropic_barcode* b) { return b ? b->sorted.size() : 0; }

double entropic_barcode_fmax(const entropic_barcode* b) { return b ? b->barcode.f_max : 0.0; }

entropic_status entropic_barcode_bar(const entropic_barcode* b, size_t index, double* birth, double* death) {
  return guarded([&] {
    require(b != nullptr && birth != nullptr && death != nullptr, "null argument");
    require(index < b->sorted.size(), "bar index out of range");
    *birth = b->sorted[index].birth;
    *death = b->sorted[index].death;
  });
}

entropic_status entropic_barcode_entropy(const entropic_barcode* b, double* entropy) {
  return guarded([&] {
    require(b != nullptr && entropy != nullptr, "null argument");
    *entropy = entropic::persistent_entropy(b->barcode);
  });
}

entropic_status entropic_barcode_to_csv(const entropic_barcode* b, char** csv) {
  return guarded([&] {
    require(b != nullptr && csv != nullptr, "null argument");
    *csv = duplicate(entropic::barcode_to_csv(b->barcode));
  });
}

void entropic_barcode_free(entropic_barcode* b) { delete b; }

entropic_status entropic_signal_entropy(const entropic_signal* s, size_t target_len, double* entropy) {
  return guarded([&] {
    require(s != nullptr && entropy != nullptr, "null argument");
    *entropy = entropic::signal_entropy(s->signal, target_len);
  });
}

entropic_status entropic_kernel_eval(const entropic_kernel* k, const double* u, const double* v, size_t dim,
                                     double* out) {
  return guarded([&] {
    require(u != nullptr && v != nullptr && out != nullptr, "null argument");
    *out = entropic::kernel_eval(to_kernel(k), {u, dim}, {v, dim});
  });
}

entropic_status entropic_model_train(const double* features, const int* labels, size_t count, size_t dim,
                                     const entropic_kernel* kernel, double C, double tol, entropic_model** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto points = to_points(features, labels, count, dim);
    *out = new entropic_model{entropic::train_multiclass(points, {to_kernel(kernel), C, tol})};
  });
}

entropic_status entropic_model_predict(const entropic_model* m, const double* features, size_t count, size_t dim,
                                       int* labels) {
  return guarded([&] {
    require(m != nullptr && labels != nullptr && (features != nullptr || count == 0), "null argument");
    for (size_t i = 0; i < count; ++i) labels[i] = m->model.predict(std::span<const double>(features + i * dim, dim));
  });
}

entropic_status entropic_model_decision(const entropic_model* m, int class_a, int class_b, const double* point,
                                        size_t dim, double* value) {
  return guarded([&] {
    require(m != nullptr && point != nullptr && value != nullptr, "null argument");
    for (const auto& b : m->model.models) {
      if (b.class_pair == std::pair{class_a, class_b}) {
        *value = b.decision_value({point, dim});
        return;
      }
      if (b.class_pair == std::pair{class_b, class_a}) {
        *value = -b.decision_value({point, dim});
        return;
      }
    }
    throw entropic::Error(entropic::ErrorKind::InvalidArgument, "no binary model for that class pair");
  });
}

entropic_status entropic_model_to_json(const entropic_model* m, char** json) {
  return guarded([&] {
    require(m != nullptr && json != nullptr, "null argument");
    *json = duplicate(entropic::model_to_json(m->model).dump());
  });
}

entropic_status entropic_model_from_json(const char* json, entropic_model** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw entropic::Error(entropic::ErrorKind::Format, std::string("model is not valid JSON: ") + e.what());
    }
    *out = new entropic_model{entropic::model_from_json(j)};
  });
}

void entropic_model_free(entropic_model* m) { delete m; }

entropic_status entropic_cross_validate(const double* features, const int* labels, size_t count, size_t dim,
                                        const entropic_kernel* kernel, double C, double tol, size_t k, uint64_t seed,
                                        double* fold_accuracies, double* mean, int* unstratified) {
  return guarded([&] {
    require(fold_accuracies != nullptr && mean != nullptr, "null argument");
    const auto points = to_points(features, labels, count, dim);
    const auto cv = entropic::kfold_cross_validate(points, {to_kernel(kernel), C, tol}, k, seed);
    std::copy(cv.fold_accuracies.begin(), cv.fold_accuracies.end(), fold_accuracies);
    *mean = cv.mean;
    if (unstratified) *unstratified = cv.unstratified ? 1 : 0;
  });
}

entropic_status entropic_accuracy(const int* predicted, const int* truth, size_t count, double* out) {
  return guarded([&] {
    require(out != nullptr && (count == 0 || (predicted != nullptr && truth != nullptr)), "null argument");
    *out = entropic::accuracy({predicted, count}, {truth, count});
  });
}

entropic_status entropic_table_build(const char* source, const char* config_json, entropic_table** out,
                                     char** failures_json) {
  return guarded([&] {
    require(source != nullptr && out != nullptr, "null argument");
    const entropic::RunConfig config = parse_config(config_json);
    const std::filesystem::path path(source);
    nlohmann::json failures = nlohmann::json::array();

    if (!std::filesystem::is_directory(path)) {
      const std::string header = first_line(path);
      if (header.rfind("actor,sex,", 0) == 0) {
        *out = new entropic_table{entropic::entropy_table_from_csv(read_text(path))};
        if (failures_json) *failures_json = duplicate(failures.dump());
        return;
      }
    }

    std::vector<entropic::RecordingMeta> records;
    if (std::filesystem::is_directory(path)) {
      auto scan = entropic::scan_ravdess_directory(path);
      for (const auto& s : scan.skipped) failures.push_back({{"path", s}, {"error", "skipped"}});
      records = std::move(scan.records);
    } else {
      records = entropic::parse_manifest(path);
    }
    entropic::EntropyOptions options;
    options.target_len = config.target_len;
    options.jobs = config.jobs;
    if (config.jitter) options.jitter_epsilon = config.jitter_epsilon;
    auto table = entropic::build_entropy_table(records, options);
    for (const auto& f : table.failures) failures.push_back({{"path", f.path.string()}, {"error", f.message}});
    if (failures_json) *failures_json = duplicate(failures.dump());
    *out = new entropic_table{std::move(table.matrix)};
  });
}

entropic_status entropic_table_from_csv(const char* csv, entropic_table** out) {
  return guarded([&] {
    require(csv != nullptr && out != nullptr, "null argument");
    *out = new entropic_table{entropic::entropy_table_from_csv(csv)};
  });
}

entropic_status entropic_table_to_csv(const entropic_table* t, char** csv) {
  return guarded([&] {
    require(t != nullptr && csv != nullptr, "null argument");
    *csv = duplicate(entropic::entropy_table_to_csv(t->matrix));
  });
}

size_t entropic_table_rows(const entropic_table* t) { return t ? t->matrix.rows() : 0; }

size_t entropic_table_cols(const entropic_table* t) { return t ? t->matrix.cols() : 0; }

entropic_status entropic_table_missing(const entropic_table* t, int expected_actors, char** description) {
  return guarded([&] {
    require(t != nullptr && description != nullptr, "null argument");
    *description = duplicate(entropic::describe_missing(entropic::missing_cells(t->matrix, expected_actors)));
  });
}

void entropic_table_free(entropic_table* t) { delete t; }

entropic_status entropic_experiment_run(const entropic_table* t, int experiment, const char* config_json,
                                        char** result_json, char** pairwise_csv) {
  return guarded([&] {
    require(t != nullptr && result_json != nullptr, "null argument");
    const auto result = entropic::run_experiment(experiment, t->matrix, parse_config(config_json));
    std::string json = entropic::to_json(result).dump(2);
    std::string csv = experiment == 3 ? entropic::pairwise_to_csv(result.pairwise) : std::string();
    *result_json = duplicate(json);
    if (pairwise_csv) *pairwise_csv = duplicate(csv);
  });
}

entropic_status entropic_kernel_report(const entropic_table* t, int experiment, const char* config_json,
                                       char** report_json) {
  return guarded([&] {
    require(t != nullptr && report_json != nullptr, "null argument");
    const auto config = parse_config(config_json);
    const auto points = entropic::build_experiment(experiment, t->matrix, config);
    const auto grid = entropic::select_best_kernel(points, entropic::default_kernel_grid(points), config.k,
                                                   config.seed, config.jobs, config.tol, config.standardize);
    nlohmann::json j = entropic::to_json(grid);
    j["experiment"] = experiment;
    j["points"] = points.size();
    j["config"] = entropic::to_json(config);
    *report_json = duplicate(j.dump(2));
  });
}

entropic_status entropic_stats_run(const entropic_table* t, char** correlation_csv, char** sex_means_csv,
                                   char** boxplot_csv, char** warnings) {
  return guarded([&] {
    require(t != nullptr && correlation_csv != nullptr && sex_means_csv != nullptr && boxplot_csv != nullptr,
            "null argument");
    const entropic::EntropyMatrix& m = t->matrix;
    const auto missing = entropic::missing_cells(m, 0);
    if (!missing.empty()) {
      throw entropic::Error(entropic::ErrorKind::Incomplete,
                            "incomplete entropy table: " + entropic::describe_missing(missing));
    }
    // Constant rows have no defined correlation; they are left out of the
    // correlation analysis but kept in the box-plots.
    std::string notes;
    entropic::EntropyMatrix varying{{}, m.columns, {}};
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const auto row = m.row(r);
      const bool constant = std::all_of(row.begin(), row.end(), [&](double v) { return v == row.front(); });
      if (constant && row.size() > 0) {
        notes += "actor " + std::to_string(m.actors[r].actor_id) + ": constant entropy row excluded from correlations\n";
        continue;
      }
      varying.actors.push_back(m.actors[r]);
      varying.values.insert(varying.values.end(), row.begin(), row.end());
    }
    const auto corr = entropic::correlation_matrix(varying);
    std::vector<entropic::Sex> sexes;
    for (const auto& a : varying.actors) sexes.push_back(a.sex);
    const auto means = entropic::sex_grouped_correlation_means(corr, sexes);
    const char* names[2] = {"male", "female"};
    for (int s = 0; s < 2; ++s) {
      if (!means.defined[s][s]) {
        notes += std::string("within-") + names[s] + " mean undefined: fewer than two " + names[s] + " actors\n";
      }
    }
    auto boxes = entropic::boxplot_by_audio(m);
    const auto by_emotion = entropic::boxplot_by_emotion(m);
    boxes.insert(boxes.end(), by_emotion.begin(), by_emotion.end());

    std::string c = entropic::correlation_to_csv(corr);
    std::string s = entropic::sex_means_to_csv(means);
    std::string b = entropic::boxplot_to_csv(boxes);
    *correlation_csv = duplicate(c);
    *sex_means_csv = duplicate(s);
    *boxplot_csv = duplicate(b);
    if (warnings) *warnings = duplicate(notes);
  });
}

}  // extern "C"
