// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Criterion 7 needs
// the real corpus (ENTROPIC_RAVDESS_ROOT) and never fails the run.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dataset.hpp"
#include "persistence.hpp"
#include "stats.hpp"
#include "support.hpp"
#include "svm.hpp"

using namespace entropic;
using namespace entropic::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  enum class State { Pass, Fail, Skip } state;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Outcome::State::Pass : Outcome::State::Fail, std::move(detail)};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  std::size_t with_ties = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 63;
    // Half the signals draw from a few levels so duplicates are common.
    const bool coarse = trial % 2 == 0;
    std::uniform_int_distribution<int> level(0, 5);
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = coarse ? level(rng) : real(rng);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    with_ties += std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    const CanonicalSignal c = canonicalize(Signal(x, 0.0));
    if (lower_star_barcode(c).sorted_bars() != barcode_bruteforce_oracle(c).sorted_bars()) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  return pass_if(mismatches == 0 && elapsed < 2.0,
                 fmt("1000 signals (%zu with ties), %zu mismatches, %.3f s", with_ties, mismatches, elapsed));
}

// Direct evaluation of -sum p ln p over hand-listed bar lengths.
double hand_entropy(const std::vector<double>& lengths) {
  double total = 0.0;
  for (double l : lengths) total += l;
  double h = 0.0;
  for (double l : lengths) h -= (l / total) * std::log(l / total);
  return h;
}

Outcome entropy_identities() {
  bool ok = persistent_entropy(Barcode{{{0.5, 2.0}}, 2.0}) == 0.0;
  ok = ok && persistent_entropy(Barcode{{{0.5, kInfiniteDeath}}, 2.0}) == 0.0;
  double worst = 0.0;
  for (std::size_t n : {2u, 4u, 16u, 256u}) {
    Barcode b;
    for (std::size_t i = 0; i < n; ++i) b.bars.push_back({static_cast<double>(i), static_cast<double>(i) + 1.5});
    b.f_max = static_cast<double>(n) + 0.5;
    worst = std::max(worst, std::abs(persistent_entropy(b) - std::log(static_cast<double>(n))));
  }
  ok = ok && worst <= 1e-12;
  // [1, 2, 0]: bars [0, inf) closed at 3 and [1, 2) give lengths {3, 1}.
  const double e1 = signal_entropy(Signal({1, 2, 0}, 0.0), 0);
  // [1, 5, 2, 6, 3]: [1, inf) closed at 7, [2, 5), [3, 6) give lengths {6, 3, 3}.
  const double e2 = signal_entropy(Signal({1, 5, 2, 6, 3}, 0.0), 0);
  const double d1 = std::abs(e1 - hand_entropy({3, 1}));
  const double d2 = std::abs(e2 - hand_entropy({6, 3, 3}));
  ok = ok && d1 <= 1e-6 && d2 <= 1e-6 && std::abs(e1 - 0.5623351) <= 1e-6 && std::abs(e2 - 1.0397208) <= 1e-6;
  return pass_if(ok, fmt("max |E - ln n| = %.2e, examples %.7f / %.7f", worst, e1, e2));
}

Outcome stability() {
  const auto start = Clock::now();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<double> amplitudes{1e-2, 1e-4, 1e-6};
  std::vector<std::vector<double>> deltas(amplitudes.size());
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(1000);
    for (auto& v : x) v = u(rng);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    const double range = *hi - *lo;
    const double base = signal_entropy(Signal(x, 0.0), 0);
    for (std::size_t a = 0; a < amplitudes.size(); ++a) {
      std::vector<double> g = x;
      for (auto& v : g) v += amplitudes[a] * range * u(rng);
      deltas[a].push_back(std::abs(signal_entropy(Signal(g, 0.0), 0) - base));
    }
  }
  std::vector<double> medians;
  for (const auto& d : deltas) medians.push_back(median(d));
  const double elapsed = seconds_since(start);
  const bool monotone = medians[0] >= medians[1] && medians[1] >= medians[2];
  return pass_if(monotone && medians[2] <= 0.05 && elapsed < 10.0,
                 fmt("median |dE| %.3e / %.3e / %.3e at 1e-2 / 1e-4 / 1e-6, %.2f s", medians[0], medians[1],
                     medians[2], elapsed));
}

double kkt_residual(const SvmModel& m, const std::vector<LabeledPoint>& pts, double C) {
  std::vector<double> alpha(pts.size(), 0.0);
  for (std::size_t s = 0; s < m.support_indices.size(); ++s) alpha[m.support_indices[s]] = std::abs(m.coefficients[s]);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double y = pts[i].label == m.class_pair.first ? -1.0 : 1.0;
    const double margin = y * m.decision_value(pts[i].features);
    if (alpha[i] <= 0.0) worst = std::max(worst, 1.0 - margin);
    else if (alpha[i] >= C) worst = std::max(worst, margin - 1.0);
    else worst = std::max(worst, std::abs(margin - 1.0));
  }
  return worst;
}

Outcome svm_correctness() {
  // (a) points -1 and +1: w = 1, b = 0, boundary at 0.
  const std::vector<LabeledPoint> two{{{-1.0}, 0, {}}, {{1.0}, 1, {}}};
  const SvmModel m = train_binary(two, {KernelSpec::linear(), 10.0, 1e-3});
  const double boundary = m.decision_value(std::vector<double>{0.0});
  const double slope = m.decision_value(std::vector<double>{1.0}) - boundary;
  const bool a = std::abs(m.bias) <= 1e-6 && std::abs(boundary) <= 1e-6 && std::abs(slope - 1.0) <= 1e-6;

  // (b) separable blobs, C = 10.
  const double tol = 1e-3;
  const auto pts = blobs({{-2, -2}, {2, 2}}, 50, 0.5, 11);
  const SvmModel sep = train_binary(pts, {KernelSpec::linear(), 10.0, tol});
  std::size_t correct = 0;
  for (const auto& p : pts) correct += sep.predict(p.features) == p.label;
  const double train_acc = static_cast<double>(correct) / static_cast<double>(pts.size());
  const double residual = kkt_residual(sep, pts, 10.0);
  const bool b = train_acc == 1.0 && residual <= tol;

  // (c) Gaussian kernel times a positive constant (the normal density form).
  const auto train = blobs({{-1, 0}, {1, 0}}, 40, 0.9, 12);
  const auto test = blobs({{-1, 0}, {1, 0}}, 100, 1.2, 13);
  const double sigma = 0.7;
  KernelSpec density = KernelSpec::gaussian(sigma);
  density.scale = 1.0 / (2.0 * M_PI * sigma * sigma);
  const SvmModel plain = train_binary(train, {KernelSpec::gaussian(sigma), 1.0, 1e-3});
  const SvmModel scaled = train_binary(train, {density, 1.0 / density.scale, 1e-3});
  std::size_t differing = 0;
  for (const auto& p : test) differing += plain.predict(p.features) != scaled.predict(p.features);
  const bool c = test.size() == 200 && differing == 0;

  return pass_if(a && b && c, fmt("(a) b = %.1e, f(0) = %.1e %s; (b) acc %.3f, KKT %.2e %s; (c) %zu/200 differ %s",
                                  m.bias, boundary, a ? "ok" : "FAIL", train_acc, residual, b ? "ok" : "FAIL",
                                  differing, c ? "ok" : "FAIL"));
}

Outcome null_model() {
  const EntropyMatrix separable = synthetic_matrix(24, [](std::size_t r, const AudioColumn& c) {
    return code(c.emotion) + 0.05 * static_cast<double>(r % 7) / 7.0;
  });
  RunConfig config;
  config.grid_search = false;
  const double sep = run_experiment(1, separable, config).cv->mean;

  // Same points with the emotion labels permuted.
  std::vector<LabeledPoint> points = build_experiment1(separable);
  std::vector<int> labels;
  for (const auto& p : points) labels.push_back(p.label);
  SeededRng rng(3);
  seeded_shuffle(labels, rng);
  for (std::size_t i = 0; i < points.size(); ++i) points[i].label = labels[i];
  const double acc = kfold_cross_validate(points, {KernelSpec::linear(), 1.0, 1e-3}, 5, 3).mean;

  const double n = static_cast<double>(points.size());
  const double p = 1.0 / 8.0;
  const double band = 3.0 * std::sqrt(p * (1.0 - p) / n);
  return pass_if(std::abs(acc - p) <= band && sep == 1.0,
                 fmt("shuffled %.4f in [%.4f, %.4f]; separable %.4f", acc, p - band, p + band, sep));
}

Outcome censuses() {
  const EntropyMatrix m = random_matrix(24, 31);
  const std::size_t e1 = build_experiment1(m).size();
  const std::size_t e2 = build_experiment2(m).size();
  const std::size_t e3 = build_experiment3(m).size();
  RunConfig config;
  config.grid_search = false;
  const std::size_t cells = run_experiment(3, m, config).pairwise.size();
  return pass_if(e1 == 1440 && e2 == 60 && e3 == 168 && cells == 21,
                 fmt("%zu / %zu / %zu points, %zu pairwise cells", e1, e2, e3, cells));
}

Outcome corpus_reproduction() {
  const char* root = std::getenv("ENTROPIC_RAVDESS_ROOT");
  if (!root || !*root) return {Outcome::State::Skip, "set ENTROPIC_RAVDESS_ROOT to the corpus directory"};
  const auto scan = scan_ravdess_directory(root);
  EntropyOptions options;
  options.jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto start = Clock::now();
  const EntropyTable table = build_entropy_table(scan.records, options);
  const double extraction = seconds_since(start);
  if (!table.failures.empty() || !missing_cells(table.matrix, 24).empty()) {
    return {Outcome::State::Fail, fmt("%zu files failed or cells missing", table.failures.size())};
  }
  RunConfig config;
  config.grid_search = false;
  const double e1 = run_experiment(1, table.matrix, config).cv->mean;
  const double e2 = *run_experiment(2, table.matrix, config).full_accuracy;
  const ExperimentResult r3 = run_experiment(3, table.matrix, config);
  double calm_angry = 0.0;
  double table_mean = 0.0;
  for (const auto& cell : r3.pairwise) {
    table_mean += cell.cv.mean / static_cast<double>(r3.pairwise.size());
    if (cell.first == Emotion::Calm && cell.second == Emotion::Angry) calm_angry = cell.cv.mean;
  }
  std::vector<Sex> sexes;
  for (const auto& a : table.matrix.actors) sexes.push_back(a.sex);
  const auto means = sex_grouped_correlation_means(correlation_matrix(table.matrix), sexes);
  const double mm = means.mean[0][0];
  const double ff = means.mean[1][1];
  const double mf = means.mean[0][1];
  const bool ok = std::abs(e1 - 0.203) <= 0.10 && e2 >= 0.85 && calm_angry >= 0.70 &&
                  std::abs(table_mean - 0.698) <= 0.10 && mm > mf && ff > mf && std::abs(mm - 0.43) <= 0.15 &&
                  std::abs(ff - 0.49) <= 0.15 && std::abs(mf - 0.23) <= 0.15 && extraction < 120.0;
  return pass_if(ok, fmt("exp1 %.3f, exp2 full %.3f, calm-angry %.3f, pair mean %.3f, sex means %.2f/%.2f/%.2f, "
                         "extraction %.1f s",
                         e1, e2, calm_angry, table_mean, mm, ff, mf, extraction));
}

// Voiced, syllable-modulated harmonic signal at 48 kHz stored as 16-bit
// PCM, with additive Gaussian noise of `noise_lsb` quantization steps.
std::vector<double> speech_like(std::mt19937_64& rng, std::size_t n, double noise_lsb) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  const double rate = 48000.0;
  const double f0 = 100.0 + 150.0 * u(rng);
  const double syllables = 3.0 + 3.0 * u(rng);
  std::vector<double> amp(6);
  for (auto& a : amp) a = u(rng);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    double v = 0.0;
    for (std::size_t h = 0; h < amp.size(); ++h) {
      v += amp[h] / static_cast<double>(h + 1) * std::sin(2.0 * M_PI * f0 * static_cast<double>(h + 1) * t + h);
    }
    const double envelope = std::max(0.0, std::sin(M_PI * syllables * t));
    const double pcm = 0.1 * envelope * v * 32767.0 + noise_lsb * g(rng);
    x[i] = std::round(pcm) / 32768.0;
  }
  return x;
}

double median_relative_change(double noise_lsb, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> changes;
  for (int trial = 0; trial < 50; ++trial) {
    const Signal s(speech_like(rng, 100000, noise_lsb), 48000.0);
    const double full = signal_entropy(s, 0);
    const double reduced = signal_entropy(s, 10000);
    changes.push_back(std::abs(reduced - full) / full);
  }
  return median(changes);
}

Outcome subsampling_consistency() {
  // Gating run: one quantization step of noise, the floor of dithered
  // 16-bit audio. The sweep shows how the tolerance depends on the floor.
  const double gate = median_relative_change(1.0, 8);
  std::string sweep;
  for (double lsb : {0.0, 3.0, 10.0}) sweep += fmt(", %g LSB %.3f", lsb, median_relative_change(lsb, 8));
  return pass_if(gate <= 0.10, fmt("median relative change %.4f at 1 LSB (tolerance 0.10)%s", gate, sweep.c_str()));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 persistence oracle equivalence", oracle_equivalence},
      {"2 entropy identities", entropy_identities},
      {"3 stability under jitter", stability},
      {"4 svm correctness", svm_correctness},
      {"5 null-model calibration", null_model},
      {"6 experiment censuses", censuses},
      {"7 corpus reproduction (diagnostic)", corpus_reproduction},
      {"8 subsampling consistency", subsampling_consistency},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Outcome::State::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.state == Outcome::State::Pass ? "PASS" : o.state == Outcome::State::Fail ? "FAIL" : "SKIP";
    std::printf("[%s] %s: %s\n", tag, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    const bool gating = name.front() != '7';
    if (o.state == Outcome::State::Fail && gating) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
