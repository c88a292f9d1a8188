#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "dataset.hpp"
#include "dataset_types.hpp"
#include "svm.hpp"

namespace entropic::testing {

namespace fs = std::filesystem;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("entropic_" + tag + "_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline void write_signal_csv(const fs::path& path, const std::vector<double>& samples) {
  std::ofstream out(path);
  out.precision(17);
  for (double v : samples) out << v << "\n";
}

/// Little-endian RIFF/WAVE writer for raw sample bytes.
inline void write_wav(const fs::path& path, std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                      std::uint16_t bits, const std::vector<unsigned char>& data) {
  std::ofstream out(path, std::ios::binary);
  auto u16 = [&](std::uint16_t v) {
    out.put(static_cast<char>(v & 0xff));
    out.put(static_cast<char>(v >> 8));
  };
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  out.write("RIFF", 4);
  u32(static_cast<std::uint32_t>(36 + data.size()));
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  u32(16);
  u16(format);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(bits);
  out.write("data", 4);
  u32(static_cast<std::uint32_t>(data.size()));
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

inline std::vector<unsigned char> pcm16(const std::vector<std::int16_t>& frames) {
  std::vector<unsigned char> out;
  for (std::int16_t v : frames) {
    const auto u = static_cast<std::uint16_t>(v);
    out.push_back(static_cast<unsigned char>(u & 0xff));
    out.push_back(static_cast<unsigned char>(u >> 8));
  }
  return out;
}

/// 0,1,0,1,...,0 with `minima` zeros: barcode {[0,inf)} plus minima-1 bars [0,1).
inline std::vector<double> comb_signal(int minima) {
  std::vector<double> s;
  for (int i = 0; i < minima; ++i) {
    if (i) s.push_back(1.0);
    s.push_back(0.0);
  }
  return s;
}

/// Complete actors x 60 matrix with values drawn by `value(actor_row, column)`.
template <typename F>
EntropyMatrix synthetic_matrix(int actors, F value) {
  std::vector<ActorRow> rows;
  for (int a = 1; a <= actors; ++a) rows.push_back({a, sex_of_actor(a), true});
  EntropyMatrix m = EntropyMatrix::empty(std::move(rows), full_script_columns());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = value(r, m.columns[c]);
  }
  return m;
}

inline EntropyMatrix random_matrix(int actors, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 5.0);
  return synthetic_matrix(actors, [&](std::size_t, const AudioColumn&) { return u(rng); });
}

/// Isotropic Gaussian blobs centered at `centers`, `per_class` points each.
inline std::vector<LabeledPoint> blobs(const std::vector<std::vector<double>>& centers, std::size_t per_class,
                                       double spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, spread);
  std::vector<LabeledPoint> out;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      LabeledPoint p;
      for (double x : centers[c]) p.features.push_back(x + noise(rng));
      p.label = static_cast<int>(c);
      out.push_back(std::move(p));
    }
  }
  return out;
}

/// Writes one CSV signal per recording plus a manifest; the signal of each
/// recording is `signal(actor, column)`.
template <typename F>
fs::path write_corpus(const fs::path& dir, const std::vector<int>& actors, F signal) {
  std::string manifest = "path,actor_id,sex,emotion,intensity,statement,repetition\n";
  for (int a : actors) {
    for (const AudioColumn& c : full_script_columns()) {
      const std::string name = "a" + std::to_string(a) + "_" + c.label() + ".csv";
      write_signal_csv(dir / name, signal(a, c));
      manifest += name + "," + std::to_string(a) + "," + to_string(sex_of_actor(a)) + "," + to_string(c.emotion) +
                  "," + to_string(c.intensity) + "," + std::to_string(c.statement) + "," +
                  std::to_string(c.repetition) + "\n";
    }
  }
  write_text(dir / "manifest.csv", manifest);
  return dir / "manifest.csv";
}

/// Emotion-separable corpus signal: comb whose minima count doubles per emotion
/// code, offset by the script slot, so entropy bands are well separated.
inline std::vector<double> separable_signal(int /*actor*/, const AudioColumn& c) {
  const int slot = (c.statement - 1) * 2 + (c.repetition - 1);
  return comb_signal(3 * (1 << code(c.emotion)) + slot);
}

}  // namespace entropic::testing
