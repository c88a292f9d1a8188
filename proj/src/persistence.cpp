#include "persistence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace entropic {

std::vector<PersistenceBar> Barcode::sorted_bars() const {
  std::vector<PersistenceBar> out = bars;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Disjoint sets whose roots remember the oldest (lowest-rank) vertex.
class ElderUnionFind {
 public:
  explicit ElderUnionFind(std::size_t n) : parent_(n), elder_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    std::iota(elder_.begin(), elder_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  std::size_t elder(std::size_t root) const { return elder_[root]; }

  // Attaches `younger` under `older`; the merged root keeps the older birth.
  void attach(std::size_t younger, std::size_t older) { parent_[younger] = older; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> elder_;
};

void require_non_empty(const CanonicalSignal& c) {
  if (c.size() == 0) throw Error(ErrorKind::InvalidArgument, "barcode of an empty signal");
  if (c.rank.size() != c.size() || c.order.size() != c.size()) {
    throw Error(ErrorKind::InvalidArgument, "canonical signal rank tables do not match its length");
  }
}

double max_value(const CanonicalSignal& c) { return c.samples[c.order.back()]; }

void emit(std::vector<PersistenceBar>& bars, double birth, double death) {
  // Ties among raw values can close a bar at its own birth value.
  if (death > birth) bars.push_back({birth, death});
}

}  // namespace

Barcode lower_star_barcode(const CanonicalSignal& c) {
  require_non_empty(c);
  const std::size_t n = c.size();
  Barcode out;
  out.f_max = max_value(c);

  ElderUnionFind sets(n);
  std::vector<char> active(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t v = c.order[r];
    active[v] = 1;
    const double value = c.samples[v];
    for (const std::size_t u : {v - 1, v + 1}) {
      if (u >= n || !active[u]) continue;  // v - 1 wraps for v == 0
      std::size_t a = sets.find(u);
      std::size_t b = sets.find(v);
      if (a == b) continue;
      // The root whose elder has the larger rank is the younger component.
      if (c.rank[sets.elder(a)] > c.rank[sets.elder(b)]) std::swap(a, b);
      const std::size_t dying = sets.elder(b);
      if (dying != v) emit(out.bars, c.samples[dying], value);
      sets.attach(b, a);
    }
  }
  out.bars.push_back({c.samples[c.order.front()], kInfiniteDeath});
  return out;
}

Barcode barcode_bruteforce_oracle(const CanonicalSignal& c) {
  require_non_empty(c);
  const std::size_t n = c.size();
  if (n > kBruteforceMaxLength) {
    throw Error(ErrorKind::InvalidArgument, "brute-force barcode limited to " +
                                                std::to_string(kBruteforceMaxLength) + " samples");
  }
  Barcode out;
  out.f_max = max_value(c);

  // Each component is identified by its lowest-rank vertex: the elder rule
  // says exactly that identity survives a merge.
  std::vector<std::size_t> previous;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<char> in_sublevel(n, 0);
    for (std::size_t i = 0; i < n; ++i) in_sublevel[i] = c.rank[i] <= t;

    std::vector<std::size_t> current;
    std::vector<char> seen(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
      if (!in_sublevel[start] || seen[start]) continue;
      std::vector<std::size_t> stack{start};
      seen[start] = 1;
      std::size_t oldest = start;
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (c.rank[x] < c.rank[oldest]) oldest = x;
        for (const std::size_t y : {x - 1, x + 1}) {
          if (y < n && in_sublevel[y] && !seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
      current.push_back(oldest);
    }
    std::sort(current.begin(), current.end());

    const double value = c.samples[c.order[t]];
    for (const std::size_t id : previous) {
      if (!std::binary_search(current.begin(), current.end(), id)) emit(out.bars, c.samples[id], value);
    }
    previous = std::move(current);
  }
  for (const std::size_t id : previous) out.bars.push_back({c.samples[id], kInfiniteDeath});
  return out;
}

double persistent_entropy(const Barcode& b) {
  if (b.bars.empty()) throw Error(ErrorKind::InvalidArgument, "entropy of an empty barcode");
  if (b.bars.size() == 1) return 0.0;
  const double closing = b.f_max + 1.0;
  std::vector<double> lengths;
  lengths.reserve(b.bars.size());
  double total = 0.0;
  for (const PersistenceBar& bar : b.bars) {
    const double len = (bar.infinite() ? closing : bar.death) - bar.birth;
    if (!(len >= 0.0) || !std::isfinite(len)) {
      throw Error(ErrorKind::Domain, "bar with negative or non-finite length");
    }
    lengths.push_back(len);
    total += len;
  }
  if (total <= 0.0) throw Error(ErrorKind::Domain, "all bar lengths are zero");
  double entropy = 0.0;
  for (const double len : lengths) {
    if (len == 0.0) continue;
    const double p = len / total;
    entropy -= p * std::log(p);
  }
  return std::max(entropy, 0.0);
}

Barcode signal_barcode(const Signal& s, std::size_t target_len, std::optional<double> jitter_epsilon) {
  const bool reduce = target_len != 0 && target_len < s.size();
  const Signal& reduced = reduce ? subsample(s, target_len) : s;
  if (jitter_epsilon) return lower_star_barcode(canonicalize(jitter(reduced, *jitter_epsilon)));
  return lower_star_barcode(canonicalize(reduced));
}

double signal_entropy(const Signal& s, std::size_t target_len, std::optional<double> jitter_epsilon) {
  return persistent_entropy(signal_barcode(s, target_len, jitter_epsilon));
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string barcode_to_csv(const Barcode& b) {
  std::string out = "birth,death\n";
  for (const PersistenceBar& bar : b.sorted_bars()) {
    out += format_real(bar.birth);
    out += ',';
    out += bar.infinite() ? "inf" : format_real(bar.death);
    out += '\n';
  }
  return out;
}

}  // namespace entropic
