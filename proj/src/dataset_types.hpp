#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace entropic {

// Numeric values follow the corpus emotion codes 01..08.
enum class Emotion { Neutral = 1, Calm, Happy, Sad, Angry, Fearful, Disgust, Surprised };
enum class Sex { Male = 0, Female = 1 };
enum class Intensity { Normal = 1, Strong = 2 };

inline constexpr int kEmotionCount = 8;
inline constexpr int kMaxActorId = 24;

std::string to_string(Emotion e);
std::string to_string(Sex s);
std::string to_string(Intensity i);
Emotion emotion_from_string(const std::string& token);
Sex sex_from_string(const std::string& token);
Intensity intensity_from_string(const std::string& token);
inline int code(Emotion e) { return static_cast<int>(e); }
Emotion emotion_from_code(int code);
inline Sex sex_of_actor(int actor_id) { return actor_id % 2 == 1 ? Sex::Male : Sex::Female; }

/// Position of one recording inside an actor's script.
struct AudioColumn {
  Emotion emotion = Emotion::Neutral;
  Intensity intensity = Intensity::Normal;
  int statement = 1;
  int repetition = 1;

  /// e.g. "happy_strong_s1_r2"
  std::string label() const;
  static AudioColumn from_label(const std::string& label);

  friend auto operator<=>(const AudioColumn&, const AudioColumn&) = default;
};

struct RecordingMeta {
  std::filesystem::path path;
  int actor_id = 1;
  Sex sex = Sex::Male;
  AudioColumn column;
};

struct ActorRow {
  int actor_id = 1;
  Sex sex = Sex::Male;
  bool complete = true;
};

/// Actors x audios grid of entropies (nats), row-major; missing cells are NaN.
struct EntropyMatrix {
  std::vector<ActorRow> actors;
  std::vector<AudioColumn> columns;
  std::vector<double> values;

  std::size_t rows() const { return actors.size(); }
  std::size_t cols() const { return columns.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * columns.size() + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * columns.size() + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * columns.size(), columns.size());
  }
  bool complete() const;

  static EntropyMatrix empty(std::vector<ActorRow> actors, std::vector<AudioColumn> columns) {
    EntropyMatrix m{std::move(actors), std::move(columns), {}};
    m.values.assign(m.actors.size() * m.columns.size(), std::numeric_limits<double>::quiet_NaN());
    return m;
  }
};

/// The 60 columns of a complete actor script, in (emotion, intensity,
/// statement, repetition) order: 4 neutral plus 8 for each other emotion.
std::vector<AudioColumn> full_script_columns();

}  // namespace entropic
