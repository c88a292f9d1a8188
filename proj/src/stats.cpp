#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "error.hpp"
#include "persistence.hpp"

namespace entropic {

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "pearson: length mismatch");
  if (a.size() < 2) throw Error(ErrorKind::InvalidArgument, "pearson: need at least two observations");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw Error(ErrorKind::Domain, "pearson: correlation undefined for a constant sequence");
  }
  // cov / (sd_a sd_b); the (n - 1) factors cancel.
  const double r = (sab / (n - 1.0)) / (std::sqrt(saa / (n - 1.0)) * std::sqrt(sbb / (n - 1.0)));
  return std::clamp(r, -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const EntropyMatrix& m) {
  CorrelationMatrix out;
  out.size = m.rows();
  out.values.assign(out.size * out.size, 0.0);
  for (std::size_t i = 0; i < out.size; ++i) {
    out.actor_ids.push_back(m.actors[i].actor_id);
    for (double v : m.row(i)) {
      if (std::isnan(v)) {
        throw Error(ErrorKind::Incomplete, "actor " + std::to_string(m.actors[i].actor_id) + " has missing entries");
      }
    }
  }
  for (std::size_t i = 0; i < out.size; ++i) {
    out.values[i * out.size + i] = 1.0;
    for (std::size_t j = i + 1; j < out.size; ++j) {
      double r = 0.0;
      try {
        r = pearson(m.row(i), m.row(j));
      } catch (const Error& e) {
        throw Error(e.kind(), "actors " + std::to_string(m.actors[i].actor_id) + " and " +
                                  std::to_string(m.actors[j].actor_id) + ": " + e.what());
      }
      out.values[i * out.size + j] = r;
      out.values[j * out.size + i] = r;
    }
  }
  return out;
}

SexGroupedMeans sex_grouped_correlation_means(const CorrelationMatrix& corr, std::span<const Sex> sexes) {
  if (sexes.size() != corr.size) throw Error(ErrorKind::InvalidArgument, "one sex label per actor is required");
  SexGroupedMeans out;
  std::array<std::array<double, 2>, 2> sum{};
  std::array<std::array<std::size_t, 2>, 2> count{};
  for (std::size_t i = 0; i < corr.size; ++i) {
    ++out.group_sizes[static_cast<int>(sexes[i])];
    for (std::size_t j = 0; j < corr.size; ++j) {
      if (i == j) continue;
      const int a = static_cast<int>(sexes[i]);
      const int b = static_cast<int>(sexes[j]);
      sum[a][b] += corr.at(i, j);
      ++count[a][b];
    }
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.defined[a][b] = count[a][b] > 0;
      out.mean[a][b] = count[a][b] > 0 ? sum[a][b] / static_cast<double>(count[a][b]) : std::nan("");
    }
  }
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BoxplotSummary summarize(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "box-plot of an empty sample");
  std::sort(values.begin(), values.end());
  BoxplotSummary s;
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;
  for (double v : values) {
    if (v < low_fence || v > high_fence) s.outliers.push_back(v);
  }
  return s;
}

namespace {

std::vector<double> column_values(const EntropyMatrix& m, std::size_t c) {
  std::vector<double> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double v = m.at(r, c);
    if (std::isnan(v)) {
      throw Error(ErrorKind::Incomplete, "column " + m.columns[c].label() + " is missing actor " +
                                             std::to_string(m.actors[r].actor_id));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<BoxplotSummary> boxplot_by_audio(const EntropyMatrix& m) {
  std::vector<std::size_t> order(m.cols());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.columns[a].emotion < m.columns[b].emotion; });
  std::vector<BoxplotSummary> out;
  for (std::size_t c : order) {
    BoxplotSummary s = summarize(column_values(m, c));
    s.group = "audio" + std::to_string(c + 1) + ":" + m.columns[c].label();
    s.emotion = m.columns[c].emotion;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<BoxplotSummary> boxplot_by_emotion(const EntropyMatrix& m) {
  std::map<Emotion, std::vector<double>> pooled;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto values = column_values(m, c);
    auto& bucket = pooled[m.columns[c].emotion];
    bucket.insert(bucket.end(), values.begin(), values.end());
  }
  std::vector<BoxplotSummary> out;
  for (auto& [emotion, values] : pooled) {
    BoxplotSummary s = summarize(std::move(values));
    s.group = to_string(emotion);
    s.emotion = emotion;
    out.push_back(std::move(s));
  }
  return out;
}

std::string correlation_to_csv(const CorrelationMatrix& corr) {
  std::string out = "actor";
  for (int id : corr.actor_ids) out += "," + std::to_string(id);
  out += '\n';
  for (std::size_t i = 0; i < corr.size; ++i) {
    out += std::to_string(corr.actor_ids[i]);
    for (std::size_t j = 0; j < corr.size; ++j) out += "," + format_real(corr.at(i, j));
    out += '\n';
  }
  return out;
}

std::string sex_means_to_csv(const SexGroupedMeans& means) {
  std::string out = "group,male,female,members\n";
  const char* names[2] = {"male", "female"};
  for (int a = 0; a < 2; ++a) {
    out += names[a];
    for (int b = 0; b < 2; ++b) {
      out += ',';
      out += means.defined[a][b] ? format_real(means.mean[a][b]) : "undefined";
    }
    out += "," + std::to_string(means.group_sizes[a]) + "\n";
  }
  return out;
}

std::string boxplot_to_csv(std::span<const BoxplotSummary> rows) {
  std::string out = "group,emotion,min,q1,median,q3,max,mean,outliers\n";
  for (const BoxplotSummary& s : rows) {
    out += s.group + "," + to_string(s.emotion) + "," + format_real(s.min) + "," + format_real(s.q1) + "," +
           format_real(s.median) + "," + format_real(s.q3) + "," + format_real(s.max) + "," + format_real(s.mean) +
           ",";
    for (std::size_t i = 0; i < s.outliers.size(); ++i) {
      if (i) out += ';';
      out += format_real(s.outliers[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace entropic
