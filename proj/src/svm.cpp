#include "svm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <thread>

#include "error.hpp"

namespace entropic {

std::string to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::Linear:
      return "linear";
    case KernelFamily::Polynomial:
      return "polynomial";
    case KernelFamily::Gaussian:
      return "gaussian";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "linear") return KernelFamily::Linear;
  if (name == "polynomial" || name == "poly") return KernelFamily::Polynomial;
  if (name == "gaussian" || name == "rbf") return KernelFamily::Gaussian;
  throw Error(ErrorKind::InvalidArgument, "unknown kernel family '" + name + "'");
}

void KernelSpec::validate() const {
  if (family == KernelFamily::Polynomial && degree < 1) {
    throw Error(ErrorKind::InvalidArgument, "polynomial kernel needs degree >= 1");
  }
  if (family == KernelFamily::Gaussian && !(sigma > 0.0 && std::isfinite(sigma))) {
    throw Error(ErrorKind::InvalidArgument, "gaussian kernel needs sigma > 0");
  }
  if (!(scale > 0.0 && std::isfinite(scale))) {
    throw Error(ErrorKind::InvalidArgument, "kernel scale must be positive");
  }
  if (!std::isfinite(offset)) throw Error(ErrorKind::InvalidArgument, "kernel offset must be finite");
}

std::string KernelSpec::describe() const {
  switch (family) {
    case KernelFamily::Linear:
      return "linear";
    case KernelFamily::Polynomial:
      return "polynomial(d=" + std::to_string(degree) + ",c=" + std::to_string(offset) + ")";
    case KernelFamily::Gaussian:
      return "gaussian(sigma=" + std::to_string(sigma) + ")";
  }
  return "unknown";
}

double kernel_eval(const KernelSpec& k, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::InvalidArgument, "kernel dimension mismatch: " + std::to_string(u.size()) + " vs " +
                                                std::to_string(v.size()));
  }
  switch (k.family) {
    case KernelFamily::Linear: {
      double dot = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
      return k.scale * dot;
    }
    case KernelFamily::Polynomial: {
      double dot = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
      return k.scale * std::pow(dot + k.offset, k.degree);
    }
    case KernelFamily::Gaussian: {
      double sq = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        sq += d * d;
      }
      return k.scale * std::exp(-sq / (2.0 * k.sigma * k.sigma));
    }
  }
  return 0.0;
}

double SvmModel::decision_value(std::span<const double> v) const {
  if (dimension != 0 && v.size() != dimension) {
    throw Error(ErrorKind::InvalidArgument, "query has dimension " + std::to_string(v.size()) + ", model expects " +
                                                std::to_string(dimension));
  }
  double f = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    f += coefficients[i] * kernel_eval(kernel, v, support_vectors[i]);
  }
  return f;
}

int SvmModel::predict(std::span<const double> v) const {
  return decision_value(v) < 0.0 ? class_pair.first : class_pair.second;
}

namespace {

constexpr double kTau = 1e-12;

// Dual coordinate ascent on min 1/2 a'Qa - e'a, 0 <= a <= C, y'a = 0, with
// second-order working-set selection over the maximal violating pair.
// Bounded variables that cannot move are periodically shrunk out of the
// active set; the full gradient is rebuilt before optimality is accepted.
class SmoSolver {
 public:
  SmoSolver(std::vector<double> kernel, std::vector<double> y, double C, double tol)
      : n_(y.size()),
        K_(std::move(kernel)),
        y_(std::move(y)),
        C_(C),
        tol_(tol),
        alpha_(n_, 0.0),
        G_(n_, -1.0),
        G_bar_(n_, 0.0) {
    active_.resize(n_);
    for (std::size_t t = 0; t < n_; ++t) active_[t] = t;
  }

  void solve() {
    const std::size_t cap = std::max<std::size_t>(10 * n_ * n_, 10000);
    std::size_t counter = std::min<std::size_t>(n_, 1000) + 1;
    converged_ = false;
    for (iterations_ = 0; iterations_ < cap; ++iterations_) {
      if (--counter == 0) {
        counter = std::min<std::size_t>(n_, 1000);
        shrink();
      }
      std::size_t i = 0;
      std::size_t j = 0;
      if (!select(i, j)) {
        reconstruct_gradient();
        if (!select(i, j)) {
          converged_ = true;
          break;
        }
        counter = 1;
      }
      step(i, j);
    }
    reconstruct_gradient();
  }

  double bias() const {
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n_; ++t) {
      const double yG = y_[t] * G_[t];
      if (at_upper(t)) {
        if (y_[t] < 0) ub = std::min(ub, yG); else lb = std::max(lb, yG);
      } else if (at_lower(t)) {
        if (y_[t] > 0) ub = std::min(ub, yG); else lb = std::max(lb, yG);
      } else {
        free_sum += yG;
        ++free_count;
      }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
    return -rho;
  }

  const std::vector<double>& alpha() const { return alpha_; }
  bool converged() const { return converged_; }
  std::size_t iterations() const { return iterations_; }

 private:
  double Q(std::size_t a, std::size_t b) const { return y_[a] * y_[b] * K_[a * n_ + b]; }
  double Kd(std::size_t a) const { return K_[a * n_ + a]; }
  bool at_upper(std::size_t t) const { return alpha_[t] >= C_; }
  bool at_lower(std::size_t t) const { return alpha_[t] <= 0.0; }
  bool in_up(std::size_t t) const { return y_[t] > 0 ? !at_upper(t) : !at_lower(t); }
  bool in_low(std::size_t t) const { return y_[t] > 0 ? !at_lower(t) : !at_upper(t); }

  bool select(std::size_t& out_i, std::size_t& out_j) const {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n_;
    for (std::size_t t : active_) {
      if (in_up(t) && -y_[t] * G_[t] >= gmax) {
        gmax = -y_[t] * G_[t];
        i = t;
      }
    }
    if (i == n_) return false;

    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n_;
    for (std::size_t t : active_) {
      if (!in_low(t)) continue;
      gmax2 = std::max(gmax2, y_[t] * G_[t]);
      const double grad_diff = gmax + y_[t] * G_[t];
      if (grad_diff > 0.0) {
        double quad = Kd(i) + Kd(t) - 2.0 * K_[i * n_ + t];
        if (quad <= 0.0) quad = kTau;
        const double obj = -(grad_diff * grad_diff) / quad;
        if (obj <= best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    if (gmax + gmax2 < tol_ || j == n_) return false;
    out_i = i;
    out_j = j;
    return true;
  }

  bool removable(std::size_t t, double gmax1, double gmax2) const {
    if (at_upper(t)) return y_[t] > 0 ? -G_[t] > gmax1 : -G_[t] > gmax2;
    if (at_lower(t)) return y_[t] > 0 ? G_[t] > gmax2 : G_[t] > gmax1;
    return false;
  }

  void shrink() {
    double gmax1 = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    for (std::size_t t : active_) {
      if (in_up(t)) gmax1 = std::max(gmax1, -y_[t] * G_[t]);
      if (in_low(t)) gmax2 = std::max(gmax2, y_[t] * G_[t]);
    }
    // Close to optimal: restore every variable once so the final passes
    // see the whole problem.
    if (!unshrunk_ && gmax1 + gmax2 <= tol_ * 10.0) {
      unshrunk_ = true;
      reconstruct_gradient();
    }
    std::erase_if(active_, [&](std::size_t t) { return removable(t, gmax1, gmax2); });
  }

  void reconstruct_gradient() {
    if (active_.size() == n_) return;
    std::vector<bool> is_active(n_, false);
    for (std::size_t t : active_) is_active[t] = true;
    for (std::size_t t = 0; t < n_; ++t) {
      if (is_active[t]) continue;
      double g = G_bar_[t] - 1.0;
      for (std::size_t f = 0; f < n_; ++f) {
        if (!at_upper(f) && !at_lower(f)) g += Q(t, f) * alpha_[f];
      }
      G_[t] = g;
    }
    active_.resize(n_);
    for (std::size_t t = 0; t < n_; ++t) active_[t] = t;
  }

  void step(std::size_t i, std::size_t j) {
    const double old_i = alpha_[i];
    const double old_j = alpha_[j];
    const bool upper_i = at_upper(i);
    const bool upper_j = at_upper(j);
    if (y_[i] != y_[j]) {
      double quad = Kd(i) + Kd(j) + 2.0 * Q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-G_[i] - G_[j]) / quad;
      const double diff = alpha_[i] - alpha_[j];
      alpha_[i] += delta;
      alpha_[j] += delta;
      if (diff > 0.0) {
        if (alpha_[j] < 0.0) { alpha_[j] = 0.0; alpha_[i] = diff; }
      } else {
        if (alpha_[i] < 0.0) { alpha_[i] = 0.0; alpha_[j] = -diff; }
      }
      if (diff > 0.0) {
        if (alpha_[i] > C_) { alpha_[i] = C_; alpha_[j] = C_ - diff; }
      } else {
        if (alpha_[j] > C_) { alpha_[j] = C_; alpha_[i] = C_ + diff; }
      }
    } else {
      double quad = Kd(i) + Kd(j) - 2.0 * Q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (G_[i] - G_[j]) / quad;
      const double sum = alpha_[i] + alpha_[j];
      alpha_[i] -= delta;
      alpha_[j] += delta;
      if (sum > C_) {
        if (alpha_[i] > C_) { alpha_[i] = C_; alpha_[j] = sum - C_; }
      } else {
        if (alpha_[j] < 0.0) { alpha_[j] = 0.0; alpha_[i] = sum; }
      }
      if (sum > C_) {
        if (alpha_[j] > C_) { alpha_[j] = C_; alpha_[i] = sum - C_; }
      } else {
        if (alpha_[i] < 0.0) { alpha_[i] = 0.0; alpha_[j] = sum; }
      }
    }
    const double di = alpha_[i] - old_i;
    const double dj = alpha_[j] - old_j;
    for (std::size_t t : active_) G_[t] += Q(i, t) * di + Q(j, t) * dj;
    update_bar(i, upper_i);
    update_bar(j, upper_j);
  }

  // G_bar holds C * sum of Q columns over variables at the upper bound.
  void update_bar(std::size_t v, bool was_upper) {
    const bool now_upper = at_upper(v);
    if (was_upper == now_upper) return;
    const double sign = now_upper ? C_ : -C_;
    for (std::size_t t = 0; t < n_; ++t) G_bar_[t] += sign * Q(v, t);
  }

  std::size_t n_;
  std::vector<double> K_;
  std::vector<double> y_;
  double C_;
  double tol_;
  std::vector<double> alpha_;
  std::vector<double> G_;
  std::vector<double> G_bar_;
  std::vector<std::size_t> active_;
  bool unshrunk_ = false;
  bool converged_ = false;
  std::size_t iterations_ = 0;
};

void check_dimensions(std::span<const LabeledPoint> data) {
  const std::size_t dim = data.front().features.size();
  for (const LabeledPoint& p : data) {
    if (p.features.size() != dim) throw Error(ErrorKind::InvalidArgument, "feature dimensions differ");
    for (double v : p.features) {
      if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "non-finite feature value");
    }
  }
}

std::vector<int> sorted_classes(std::span<const LabeledPoint> data) {
  std::vector<int> classes;
  for (const LabeledPoint& p : data) classes.push_back(p.label);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

}  // namespace

SvmModel train_binary(std::span<const LabeledPoint> data, const SvmParams& params) {
  if (data.empty()) throw Error(ErrorKind::InvalidArgument, "training set is empty");
  params.kernel.validate();
  if (!(params.C > 0.0) || !(params.tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "C and tol must be positive");
  }
  check_dimensions(data);
  const std::vector<int> classes = sorted_classes(data);
  if (classes.size() != 2) {
    throw Error(ErrorKind::InvalidArgument, "binary training needs exactly two classes, got " +
                                                std::to_string(classes.size()));
  }

  const std::size_t n = data.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = data[i].label == classes[0] ? -1.0 : 1.0;
  std::vector<double> K(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      K[a * n + b] = K[b * n + a] = kernel_eval(params.kernel, data[a].features, data[b].features);
    }
  }

  SmoSolver solver(std::move(K), y, params.C, params.tol);
  solver.solve();

  SvmModel model;
  model.kernel = params.kernel;
  model.class_pair = {classes[0], classes[1]};
  model.dimension = data.front().features.size();
  model.bias = solver.bias();
  model.converged = solver.converged();
  model.iterations = solver.iterations();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = solver.alpha()[i];
    if (a > 0.0) {
      model.support_vectors.push_back(data[i].features);
      model.coefficients.push_back(y[i] * a);
      model.support_indices.push_back(i);
    }
  }
  return model;
}

int MulticlassModel::predict(std::span<const double> v) const {
  if (classes.size() == 1) return classes.front();
  std::map<int, std::size_t> index;
  for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = c;
  std::vector<int> votes(classes.size(), 0);
  std::vector<double> margin(classes.size(), 0.0);
  for (const SvmModel& m : models) {
    const double dv = m.decision_value(v);
    const std::size_t winner = index.at(dv < 0.0 ? m.class_pair.first : m.class_pair.second);
    ++votes[winner];
    margin[winner] += std::abs(dv);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes.size(); ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && margin[c] > margin[best])) best = c;
  }
  return classes[best];
}

std::vector<int> MulticlassModel::predict(std::span<const LabeledPoint> points) const {
  std::vector<int> out;
  out.reserve(points.size());
  for (const LabeledPoint& p : points) out.push_back(predict(p.features));
  return out;
}

MulticlassModel train_multiclass(std::span<const LabeledPoint> data, const SvmParams& params) {
  if (data.empty()) throw Error(ErrorKind::InvalidArgument, "training set is empty");
  MulticlassModel model;
  model.classes = sorted_classes(data);
  if (model.classes.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "multiclass training needs at least two classes");
  }
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      std::vector<LabeledPoint> pair;
      for (const LabeledPoint& p : data) {
        if (p.label == model.classes[a] || p.label == model.classes[b]) pair.push_back(p);
      }
      model.models.push_back(train_binary(pair, params));
    }
  }
  return model;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorKind::InvalidArgument, "accuracy: length mismatch");
  }
  if (predicted.empty()) throw Error(ErrorKind::InvalidArgument, "accuracy: empty sequences");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

SeededRng::SeededRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededRng::next() { return engine_(); }

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

double SeededRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<std::size_t> assign_folds(std::span<const LabeledPoint> data, std::size_t k, std::uint64_t seed,
                                      bool* unstratified) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "k-fold needs k >= 2");
  if (k > data.size()) {
    throw Error(ErrorKind::InvalidArgument, "k = " + std::to_string(k) + " exceeds the " +
                                                std::to_string(data.size()) + " available points");
  }
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SeededRng rng(seed);
  seeded_shuffle(order, rng);

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t idx : order) by_class[data[idx].label].push_back(idx);
  bool degrade = false;
  for (const auto& [label, members] : by_class) degrade = degrade || members.size() < k;
  if (unstratified) *unstratified = degrade;

  std::vector<std::size_t> fold(data.size());
  std::size_t counter = 0;
  if (degrade) {
    for (std::size_t idx : order) fold[idx] = counter++ % k;
  } else {
    for (const auto& [label, members] : by_class) {
      for (std::size_t idx : members) fold[idx] = counter++ % k;
    }
  }
  return fold;
}

void standardize(std::vector<LabeledPoint>& train, std::vector<LabeledPoint>& test) {
  if (train.empty()) return;
  const std::size_t dim = train.front().features.size();
  for (std::size_t d = 0; d < dim; ++d) {
    double mean = 0.0;
    for (const LabeledPoint& p : train) mean += p.features[d];
    mean /= static_cast<double>(train.size());
    double var = 0.0;
    for (const LabeledPoint& p : train) var += (p.features[d] - mean) * (p.features[d] - mean);
    const double sd = train.size() > 1 ? std::sqrt(var / static_cast<double>(train.size() - 1)) : 0.0;
    const double denom = sd > 0.0 ? sd : 1.0;
    for (LabeledPoint& p : train) p.features[d] = (p.features[d] - mean) / denom;
    for (LabeledPoint& p : test) p.features[d] = (p.features[d] - mean) / denom;
  }
}

CrossValidation kfold_cross_validate(std::span<const LabeledPoint> data, const SvmParams& params, std::size_t k,
                                     std::uint64_t seed, bool standardize_features) {
  if (data.empty()) throw Error(ErrorKind::InvalidArgument, "cross-validation on an empty dataset");
  CrossValidation cv;
  const std::vector<std::size_t> fold = assign_folds(data, k, seed, &cv.unstratified);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<LabeledPoint> train;
    std::vector<LabeledPoint> test;
    for (std::size_t i = 0; i < data.size(); ++i) (fold[i] == f ? test : train).push_back(data[i]);
    if (standardize_features) standardize(train, test);

    std::vector<int> truth;
    for (const LabeledPoint& p : test) truth.push_back(p.label);
    std::vector<int> predicted;
    const std::vector<int> classes = sorted_classes(train);
    if (classes.size() == 1) {
      predicted.assign(test.size(), classes.front());
    } else {
      predicted = train_multiclass(train, params).predict(test);
    }
    cv.fold_accuracies.push_back(accuracy(predicted, truth));
  }
  double sum = 0.0;
  for (double a : cv.fold_accuracies) sum += a;
  cv.mean = sum / static_cast<double>(k);
  return cv;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(std::span<const LabeledPoint> data,
                                                                               std::size_t train_size,
                                                                               std::uint64_t seed) {
  if (train_size == 0 || train_size >= data.size()) {
    throw Error(ErrorKind::InvalidArgument, "split train size must lie strictly between 0 and " +
                                                std::to_string(data.size()));
  }
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SeededRng rng(seed);
  seeded_shuffle(order, rng);

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t idx : order) by_class[data[idx].label].push_back(idx);

  // Largest-remainder apportionment of the training quota across classes.
  struct Quota {
    int label;
    std::size_t take;
    double remainder;
  };
  std::vector<Quota> quotas;
  std::size_t assigned = 0;
  for (const auto& [label, members] : by_class) {
    const double exact = static_cast<double>(train_size) * static_cast<double>(members.size()) /
                         static_cast<double>(data.size());
    const auto take = static_cast<std::size_t>(std::floor(exact));
    quotas.push_back({label, take, exact - static_cast<double>(take)});
    assigned += take;
  }
  std::vector<std::size_t> by_remainder(quotas.size());
  for (std::size_t i = 0; i < quotas.size(); ++i) by_remainder[i] = i;
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::size_t a, std::size_t b) { return quotas[a].remainder > quotas[b].remainder; });
  for (std::size_t i = 0; assigned < train_size; i = (i + 1) % quotas.size()) {
    Quota& q = quotas[by_remainder[i]];
    if (q.take < by_class[q.label].size()) {
      ++q.take;
      ++assigned;
    }
  }

  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  for (const Quota& q : quotas) {
    const auto& members = by_class[q.label];
    train.insert(train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(q.take));
    test.insert(test.end(), members.begin() + static_cast<std::ptrdiff_t>(q.take), members.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {train, test};
}

double median_pairwise_distance(std::span<const LabeledPoint> data) {
  std::vector<double> dist;
  for (std::size_t a = 0; a < data.size(); ++a) {
    for (std::size_t b = a + 1; b < data.size(); ++b) {
      double sq = 0.0;
      for (std::size_t d = 0; d < data[a].features.size(); ++d) {
        const double diff = data[a].features[d] - data[b].features[d];
        sq += diff * diff;
      }
      dist.push_back(std::sqrt(sq));
    }
  }
  if (dist.empty()) return 1.0;
  const std::size_t mid = dist.size() / 2;
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid), dist.end());
  double median = dist[mid];
  if (dist.size() % 2 == 0) {
    const double lower = *std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid));
    median = (median + lower) / 2.0;
  }
  return median > 0.0 ? median : 1.0;
}

KernelGrid default_kernel_grid(std::span<const LabeledPoint> data) {
  const double s = median_pairwise_distance(data);
  KernelGrid grid;
  grid.kernels.push_back(KernelSpec::linear());
  for (int d : {2, 3}) {
    for (double c : {0.0, 1.0}) grid.kernels.push_back(KernelSpec::polynomial(d, c));
  }
  for (double f : {0.1, 1.0, 10.0}) grid.kernels.push_back(KernelSpec::gaussian(f * s));
  grid.C_values = {0.1, 1.0, 10.0, 100.0};
  return grid;
}

GridSearchResult select_best_kernel(std::span<const LabeledPoint> data, const KernelGrid& grid, std::size_t k,
                                    std::uint64_t seed, std::size_t jobs, double tol, bool standardize_features) {
  if (grid.kernels.empty() || grid.C_values.empty()) {
    throw Error(ErrorKind::InvalidArgument, "kernel grid is empty");
  }
  GridSearchResult result;
  for (const KernelSpec& kernel : grid.kernels) {
    for (double C : grid.C_values) result.cells.push_back({SvmParams{kernel, C, tol}, {}});
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(result.cells.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < result.cells.size(); i = next++) {
      try {
        result.cells[i].cv = kfold_cross_validate(data, result.cells[i].params, k, seed, standardize_features);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t width = std::clamp<std::size_t>(jobs, 1, result.cells.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < width; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.cells.size(); ++i) {
    if (result.cells[i].cv.mean > result.cells[best].cv.mean) best = i;
  }
  result.best = result.cells[best].params;
  result.best_accuracy = result.cells[best].cv.mean;
  return result;
}

}  // namespace entropic
