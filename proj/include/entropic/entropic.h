/*
 * entropic: persistent entropy of 1-D signals and kernel SVM classification.
 *
 * C interface over the C++ core. Objects are opaque handles released with
 * their matching *_free function. Every fallible call returns an
 * entropic_status; on failure entropic_last_error() describes the problem
 * for the calling thread. Strings returned through char** are owned by the
 * caller and released with entropic_string_free().
 */
#ifndef ENTROPIC_ENTROPIC_H
#define ENTROPIC_ENTROPIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ENTROPIC_BUILDING)
#    define ENTROPIC_API __declspec(dllexport)
#  else
#    define ENTROPIC_API __declspec(dllimport)
#  endif
#else
#  define ENTROPIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum entropic_status {
  ENTROPIC_OK = 0,
  ENTROPIC_ERR_INVALID_ARGUMENT = 1,
  ENTROPIC_ERR_IO = 2,
  ENTROPIC_ERR_FORMAT = 3,
  ENTROPIC_ERR_DOMAIN = 4,
  ENTROPIC_ERR_INCOMPLETE = 5,
  ENTROPIC_ERR_INTERNAL = 6
} entropic_status;

typedef enum entropic_kernel_family {
  ENTROPIC_KERNEL_LINEAR = 0,
  ENTROPIC_KERNEL_POLYNOMIAL = 1,
  ENTROPIC_KERNEL_GAUSSIAN = 2
} entropic_kernel_family;

typedef struct entropic_kernel {
  entropic_kernel_family family;
  int degree;    /* polynomial */
  double offset; /* polynomial */
  double sigma;  /* gaussian */
  double scale;  /* multiplies every kernel value; 1 for the usual forms */
} entropic_kernel;

typedef struct entropic_signal entropic_signal;
typedef struct entropic_barcode entropic_barcode;
typedef struct entropic_model entropic_model;
typedef struct entropic_table entropic_table;

ENTROPIC_API const char* entropic_version(void);
ENTROPIC_API const char* entropic_last_error(void);
ENTROPIC_API const char* entropic_status_name(entropic_status status);
ENTROPIC_API void entropic_string_free(char* s);

/* Configuration: fills defaults into a (possibly empty) JSON object and
 * validates it. NULL or "" stands for the built-in defaults. */
ENTROPIC_API entropic_status entropic_config_resolve(const char* config_json, char** effective_json);

/* ---- signals ---- */

/* ".wav" files are decoded as PCM/float audio, anything else as a
 * one-value-per-line CSV. */
ENTROPIC_API entropic_status entropic_signal_load(const char* path, entropic_signal** out);
ENTROPIC_API entropic_status entropic_signal_from_samples(const double* samples, size_t count, double sample_rate,
                                                          entropic_signal** out);
ENTROPIC_API size_t entropic_signal_length(const entropic_signal* s);
ENTROPIC_API double entropic_signal_sample_rate(const entropic_signal* s);
/* Borrowed pointer, valid until the signal is freed. */
ENTROPIC_API const double* entropic_signal_data(const entropic_signal* s);
ENTROPIC_API entropic_status entropic_signal_subsample(const entropic_signal* s, size_t target_len,
                                                       entropic_signal** out);
/* ranks must hold entropic_signal_length(s) entries. */
ENTROPIC_API entropic_status entropic_signal_canonical_ranks(const entropic_signal* s, size_t* ranks);
ENTROPIC_API void entropic_signal_free(entropic_signal* s);

/* ---- persistence ---- */

/* target_len 0 (or >= length) disables subsampling. jitter_epsilon <= 0
 * keeps the symbolic tie-break only. */
ENTROPIC_API entropic_status entropic_barcode_compute(const entropic_signal* s, size_t target_len,
                                                      double jitter_epsilon, entropic_barcode** out);
ENTROPIC_API entropic_status entropic_barcode_bruteforce(const entropic_signal* s, entropic_barcode** out);
ENTROPIC_API size_t entropic_barcode_size(const entropic_barcode* b);
ENTROPIC_API double entropic_barcode_fmax(const entropic_barcode* b);
/* Bars in (birth, death) order; an infinite death is reported as +INFINITY. */
ENTROPIC_API entropic_status entropic_barcode_bar(const entropic_barcode* b, size_t index, double* birth, double* death);
ENTROPIC_API entropic_status entropic_barcode_entropy(const entropic_barcode* b, double* entropy);
ENTROPIC_API entropic_status entropic_barcode_to_csv(const entropic_barcode* b, char** csv);
ENTROPIC_API void entropic_barcode_free(entropic_barcode* b);

ENTROPIC_API entropic_status entropic_signal_entropy(const entropic_signal* s, size_t target_len, double* entropy);

/* ---- svm ---- */

/* features is row-major, count x dim. */
ENTROPIC_API entropic_status entropic_kernel_eval(const entropic_kernel* k, const double* u, const double* v, size_t dim,
                                                  double* out);
ENTROPIC_API entropic_status entropic_model_train(const double* features, const int* labels, size_t count, size_t dim,
                                                  const entropic_kernel* kernel, double C, double tol,
                                                  entropic_model** out);
ENTROPIC_API entropic_status entropic_model_predict(const entropic_model* m, const double* features, size_t count,
                                                    size_t dim, int* labels);
/* Decision value of the binary model separating classes a and b; negative
 * values vote for a. */
ENTROPIC_API entropic_status entropic_model_decision(const entropic_model* m, int class_a, int class_b,
                                                     const double* point, size_t dim, double* value);
ENTROPIC_API entropic_status entropic_model_to_json(const entropic_model* m, char** json);
ENTROPIC_API entropic_status entropic_model_from_json(const char* json, entropic_model** out);
ENTROPIC_API void entropic_model_free(entropic_model* m);

/* fold_accuracies must hold k entries; unstratified may be NULL. */
ENTROPIC_API entropic_status entropic_cross_validate(const double* features, const int* labels, size_t count,
                                                     size_t dim, const entropic_kernel* kernel, double C, double tol,
                                                     size_t k, uint64_t seed, double* fold_accuracies, double* mean,
                                                     int* unstratified);
ENTROPIC_API entropic_status entropic_accuracy(const int* predicted, const int* truth, size_t count, double* out);

/* ---- corpus, experiments, statistics ---- */

/* source is a manifest CSV, a directory in the corpus naming layout, or an
 * entropy table CSV. failures_json (may be NULL) receives a JSON array of
 * per-file problems; they are not fatal. */
ENTROPIC_API entropic_status entropic_table_build(const char* source, const char* config_json, entropic_table** out,
                                                  char** failures_json);
ENTROPIC_API entropic_status entropic_table_from_csv(const char* csv, entropic_table** out);
ENTROPIC_API entropic_status entropic_table_to_csv(const entropic_table* t, char** csv);
ENTROPIC_API size_t entropic_table_rows(const entropic_table* t);
ENTROPIC_API size_t entropic_table_cols(const entropic_table* t);
/* Missing cells grouped by (actor, emotion); empty string when complete.
 * expected_actors 0 checks actors 1..max present id. */
ENTROPIC_API entropic_status entropic_table_missing(const entropic_table* t, int expected_actors, char** description);
ENTROPIC_API void entropic_table_free(entropic_table* t);

/* experiment is 1, 2 or 3. pairwise_csv (may be NULL) receives the 7x7
 * table for experiment 3 and an empty string otherwise. */
ENTROPIC_API entropic_status entropic_experiment_run(const entropic_table* t, int experiment, const char* config_json,
                                                     char** result_json, char** pairwise_csv);
/* Kernel grid search over the feature set of an experiment. */
ENTROPIC_API entropic_status entropic_kernel_report(const entropic_table* t, int experiment, const char* config_json,
                                                    char** report_json);
/* warnings (may be NULL) receives newline-separated notes, e.g. constant
 * actor rows that were excluded. */
ENTROPIC_API entropic_status entropic_stats_run(const entropic_table* t, char** correlation_csv,
                                                char** sex_means_csv, char** boxplot_csv, char** warnings);

#ifdef __cplusplus
}
#endif

#endif /* ENTROPIC_ENTROPIC_H */
