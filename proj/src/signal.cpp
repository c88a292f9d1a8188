#include "signal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>

#include "error.hpp"

namespace entropic {

Signal::Signal(std::vector<double> samples, double sample_rate, std::string source_id)
    : samples_(std::move(samples)), sample_rate_(sample_rate), source_id_(std::move(source_id)) {
  if (samples_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "signal has no samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error(ErrorKind::Domain, "non-finite sample at index " + std::to_string(i));
    }
  }
  if (!(sample_rate_ >= 0.0) || !std::isfinite(sample_rate_)) {
    throw Error(ErrorKind::InvalidArgument, "sample rate must be finite and non-negative");
  }
}

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

// Signed integer value of one little-endian PCM sample. 8-bit WAV is unsigned
// with a 128 offset.
std::int64_t read_pcm(const unsigned char* p, unsigned bits) {
  switch (bits) {
    case 8:
      return static_cast<std::int64_t>(p[0]) - 128;
    case 16:
      return static_cast<std::int16_t>(read_u16(p));
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v;
    }
    default:
      return static_cast<std::int32_t>(read_u32(p));
  }
}

}  // namespace

Signal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = path.string() + ": ";
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorKind::Format, where + "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = std::min<std::size_t>(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (available < 16) throw Error(ErrorKind::Format, where + "truncated fmt chunk");
      const unsigned char* f = bytes.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      sample_rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible) {
        if (available < 26) throw Error(ErrorKind::Format, where + "truncated extensible fmt chunk");
        format = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = available;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) throw Error(ErrorKind::Format, where + "missing fmt chunk");
  if (data == nullptr) throw Error(ErrorKind::Format, where + "missing data chunk");
  if (channels == 0) throw Error(ErrorKind::Format, where + "zero channels");

  const bool is_float = format == kFormatFloat && bits == 32;
  const bool is_int = format == kFormatPcm && (bits == 8 || bits == 16 || bits == 24 || bits == 32);
  if (!is_float && !is_int) {
    throw Error(ErrorKind::Format, where + "unsupported encoding (format " + std::to_string(format) +
                                       ", " + std::to_string(bits) + " bits)");
  }

  const std::size_t sample_bytes = bits / 8;
  const std::size_t frame_bytes = sample_bytes * channels;
  const std::size_t frames = data_size / frame_bytes;
  if (frames == 0) throw Error(ErrorKind::Format, where + "zero-length audio");

  std::vector<double> samples(frames);
  if (is_float) {
    for (std::size_t i = 0; i < frames; ++i) {
      double sum = 0.0;
      for (std::size_t c = 0; c < channels; ++c) {
        float v;
        const std::uint32_t raw = read_u32(data + i * frame_bytes + c * sample_bytes);
        std::memcpy(&v, &raw, sizeof v);
        sum += v;
      }
      samples[i] = std::clamp(sum / channels, -1.0, 1.0);
    }
  } else {
    const double scale = std::ldexp(1.0, bits - 1);
    for (std::size_t i = 0; i < frames; ++i) {
      std::int64_t sum = 0;
      for (std::size_t c = 0; c < channels; ++c) {
        sum += read_pcm(data + i * frame_bytes + c * sample_bytes, bits);
      }
      samples[i] = static_cast<double>(sum) / static_cast<double>(channels) / scale;
    }
  }
  return Signal(std::move(samples), sample_rate, path.string());
}

Signal load_csv_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = std::find_if_not(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
    auto last = std::find_if_not(line.rbegin(), line.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    if (first >= last) continue;
    const char* begin = &*first;
    const char* end = begin + (last - first);
    if (*begin == '+') ++begin;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw Error(ErrorKind::Format, path.string() + ": line " + std::to_string(line_no) +
                                         ": not a finite number: '" + std::string(first, last) + "'");
    }
    samples.push_back(v);
  }
  if (samples.empty()) {
    throw Error(ErrorKind::Format, path.string() + ": empty file");
  }
  return Signal(std::move(samples), 0.0, path.string());
}

Signal load_signal(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav" ? load_wav(path) : load_csv_signal(path);
}

Signal subsample(const Signal& s, std::size_t target_len) {
  const std::size_t n = s.size();
  if (target_len < 2) {
    throw Error(ErrorKind::InvalidArgument, "subsample target length must be at least 2");
  }
  if (target_len > n) {
    throw Error(ErrorKind::InvalidArgument, "subsample target length " + std::to_string(target_len) +
                                                " exceeds signal length " + std::to_string(n));
  }
  // round_half_up(k * (n-1) / (t-1)) = floor((2k(n-1) + (t-1)) / (2(t-1))), exact in integers.
  const std::uint64_t span = n - 1;
  const std::uint64_t steps = target_len - 1;
  std::vector<double> out(target_len);
  for (std::uint64_t k = 0; k < target_len; ++k) {
    const std::uint64_t idx = (2 * k * span + steps) / (2 * steps);
    out[k] = s.samples()[idx];
  }
  return Signal(std::move(out), s.sample_rate() * static_cast<double>(steps) / static_cast<double>(span),
                s.source_id());
}

CanonicalSignal canonicalize(const Signal& s) {
  CanonicalSignal c;
  c.samples = s.samples();
  c.order.resize(c.samples.size());
  std::iota(c.order.begin(), c.order.end(), std::size_t{0});
  std::stable_sort(c.order.begin(), c.order.end(),
                   [&](std::size_t a, std::size_t b) { return c.samples[a] < c.samples[b]; });
  c.rank.resize(c.samples.size());
  for (std::size_t r = 0; r < c.order.size(); ++r) c.rank[c.order[r]] = r;
  return c;
}

Signal jitter(const Signal& s, double epsilon) {
  const auto [lo, hi] = std::minmax_element(s.samples().begin(), s.samples().end());
  const double range = *hi > *lo ? *hi - *lo : 1.0;
  const double n = static_cast<double>(s.size());
  std::vector<double> out = s.samples();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += epsilon * range * static_cast<double>(i + 1) / n;
  }
  return Signal(std::move(out), s.sample_rate(), s.source_id());
}

}  // namespace entropic
