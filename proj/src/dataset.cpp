#include "dataset.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "error.hpp"
#include "persistence.hpp"
#include "signal.hpp"

namespace entropic {

namespace {

constexpr std::array<const char*, kEmotionCount> kEmotionNames = {
    "neutral", "calm", "happy", "sad", "angry", "fearful", "disgust", "surprised"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Format, what + ": not an integer: '" + s + "'");
  }
  return v;
}

void validate_record(const RecordingMeta& r) {
  if (r.actor_id < 1 || r.actor_id > kMaxActorId) {
    throw Error(ErrorKind::Domain, "actor id " + std::to_string(r.actor_id) + " outside 1.." + std::to_string(kMaxActorId));
  }
  if (r.column.statement < 1 || r.column.statement > 2) {
    throw Error(ErrorKind::Domain, "statement must be 1 or 2");
  }
  if (r.column.repetition < 1 || r.column.repetition > 2) {
    throw Error(ErrorKind::Domain, "repetition must be 1 or 2");
  }
  if (r.column.emotion == Emotion::Neutral && r.column.intensity == Intensity::Strong) {
    throw Error(ErrorKind::Domain, "neutral recordings have normal intensity only");
  }
}

void require_complete(const EntropyMatrix& m) {
  const auto missing = missing_cells(m);
  if (!missing.empty()) throw Error(ErrorKind::Incomplete, "incomplete entropy matrix: " + describe_missing(missing));
  if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorKind::Incomplete, "entropy matrix is empty");
}

}  // namespace

std::string to_string(Emotion e) { return kEmotionNames.at(static_cast<std::size_t>(code(e) - 1)); }
std::string to_string(Sex s) { return s == Sex::Male ? "male" : "female"; }
std::string to_string(Intensity i) { return i == Intensity::Normal ? "normal" : "strong"; }

Emotion emotion_from_string(const std::string& token) {
  for (std::size_t i = 0; i < kEmotionNames.size(); ++i) {
    if (token == kEmotionNames[i]) return static_cast<Emotion>(i + 1);
  }
  throw Error(ErrorKind::Domain, "unknown emotion '" + token + "'");
}

Emotion emotion_from_code(int c) {
  if (c < 1 || c > kEmotionCount) throw Error(ErrorKind::Domain, "emotion code " + std::to_string(c) + " outside 01..08");
  return static_cast<Emotion>(c);
}

Sex sex_from_string(const std::string& token) {
  if (token == "male") return Sex::Male;
  if (token == "female") return Sex::Female;
  throw Error(ErrorKind::Domain, "unknown sex '" + token + "'");
}

Intensity intensity_from_string(const std::string& token) {
  if (token == "normal") return Intensity::Normal;
  if (token == "strong") return Intensity::Strong;
  throw Error(ErrorKind::Domain, "unknown intensity '" + token + "'");
}

std::string AudioColumn::label() const {
  return to_string(emotion) + "_" + to_string(intensity) + "_s" + std::to_string(statement) + "_r" +
         std::to_string(repetition);
}

AudioColumn AudioColumn::from_label(const std::string& label) {
  const auto parts = split(label, '_');
  if (parts.size() != 4 || parts[2].size() < 2 || parts[2][0] != 's' || parts[3].size() < 2 || parts[3][0] != 'r') {
    throw Error(ErrorKind::Format, "malformed audio column label '" + label + "'");
  }
  AudioColumn c;
  c.emotion = emotion_from_string(parts[0]);
  c.intensity = intensity_from_string(parts[1]);
  c.statement = parse_int(parts[2].substr(1), "statement");
  c.repetition = parse_int(parts[3].substr(1), "repetition");
  return c;
}

bool EntropyMatrix::complete() const {
  return std::none_of(values.begin(), values.end(), [](double v) { return std::isnan(v); });
}

std::vector<AudioColumn> full_script_columns() {
  std::vector<AudioColumn> out;
  for (int e = 1; e <= kEmotionCount; ++e) {
    for (Intensity i : {Intensity::Normal, Intensity::Strong}) {
      if (e == code(Emotion::Neutral) && i == Intensity::Strong) continue;
      for (int s = 1; s <= 2; ++s) {
        for (int r = 1; r <= 2; ++r) out.push_back({static_cast<Emotion>(e), i, s, r});
      }
    }
  }
  return out;
}

std::vector<RecordingMeta> parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open manifest " + path.string());
  const std::string header_expected = "path,actor_id,sex,emotion,intensity,statement,repetition";
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<RecordingMeta> out;
  std::set<std::tuple<int, AudioColumn>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path.string() + ": line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (line != header_expected) throw Error(ErrorKind::Format, where + "expected header '" + header_expected + "'");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7) throw Error(ErrorKind::Format, where + "expected 7 fields, got " + std::to_string(f.size()));
    RecordingMeta r;
    try {
      r.path = f[0];
      if (r.path.is_relative()) r.path = path.parent_path() / r.path;
      r.actor_id = parse_int(f[1], "actor_id");
      r.sex = sex_from_string(f[2]);
      r.column.emotion = emotion_from_string(f[3]);
      r.column.intensity = intensity_from_string(f[4]);
      r.column.statement = parse_int(f[5], "statement");
      r.column.repetition = parse_int(f[6], "repetition");
      validate_record(r);
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    }
    if (!seen.insert({r.actor_id, r.column}).second) {
      throw Error(ErrorKind::Domain, where + "duplicate recording for actor " + std::to_string(r.actor_id) + " " +
                                         r.column.label());
    }
    out.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorKind::Format, path.string() + ": empty manifest");
  return out;
}

RecordingMeta parse_ravdess_filename(const std::string& name) {
  const std::filesystem::path p(name);
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  const std::string stem = p.stem().string();
  const auto fields = split(stem, '-');
  bool ok = ext == ".wav" && fields.size() == 7;
  for (const std::string& f : fields) {
    ok = ok && f.size() == 2 && std::isdigit(static_cast<unsigned char>(f[0])) &&
         std::isdigit(static_cast<unsigned char>(f[1]));
  }
  if (!ok) throw Error(ErrorKind::Format, "malformed corpus file name '" + name + "'");

  RecordingMeta r;
  r.path = name;
  r.column.emotion = emotion_from_code(std::stoi(fields[2]));
  const int intensity = std::stoi(fields[3]);
  if (intensity != 1 && intensity != 2) {
    throw Error(ErrorKind::Domain, "intensity code " + fields[3] + " outside 01..02 in '" + name + "'");
  }
  r.column.intensity = static_cast<Intensity>(intensity);
  r.column.statement = std::stoi(fields[4]);
  r.column.repetition = std::stoi(fields[5]);
  r.actor_id = std::stoi(fields[6]);
  r.sex = sex_of_actor(r.actor_id);
  try {
    validate_record(r);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(e.what()) + " in '" + name + "'");
  }
  return r;
}

DirectoryScan scan_ravdess_directory(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) throw Error(ErrorKind::Io, root.string() + " is not a directory");
  DirectoryScan scan;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".wav") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    try {
      RecordingMeta r = parse_ravdess_filename(file.filename().string());
      // Field 2 is the vocal channel: 01 speech, 02 song.
      if (file.filename().string().substr(3, 2) != "01") {
        scan.skipped.push_back(file.string() + ": not a speech recording");
        continue;
      }
      r.path = file;
      scan.records.push_back(std::move(r));
    } catch (const Error& e) {
      scan.skipped.push_back(file.string() + ": " + e.what());
    }
  }
  return scan;
}

EntropyTable build_entropy_table(const std::vector<RecordingMeta>& records, const EntropyOptions& options) {
  std::set<int> actor_ids;
  std::set<AudioColumn> column_set;
  std::map<int, Sex> sexes;
  std::set<std::tuple<int, AudioColumn>> seen;
  for (const RecordingMeta& r : records) {
    if (!seen.insert({r.actor_id, r.column}).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate recording for actor " + std::to_string(r.actor_id) + " " +
                                                  r.column.label());
    }
    actor_ids.insert(r.actor_id);
    column_set.insert(r.column);
    sexes[r.actor_id] = r.sex;
  }
  std::vector<ActorRow> rows;
  for (int id : actor_ids) rows.push_back({id, sexes[id], true});
  EntropyTable table{EntropyMatrix::empty(std::move(rows), {column_set.begin(), column_set.end()}), {}};

  std::vector<double> results(records.size(), std::nan(""));
  std::vector<std::string> errors(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      try {
        results[i] = signal_entropy(load_signal(records[i].path), options.target_len, options.jitter_epsilon);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown failure";
      }
    }
  };
  const std::size_t width = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(records.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < width; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // Placement depends only on metadata, never on completion order.
  EntropyMatrix& m = table.matrix;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto row = static_cast<std::size_t>(
        std::lower_bound(m.actors.begin(), m.actors.end(), records[i].actor_id,
                         [](const ActorRow& a, int id) { return a.actor_id < id; }) -
        m.actors.begin());
    const auto col =
        static_cast<std::size_t>(std::lower_bound(m.columns.begin(), m.columns.end(), records[i].column) - m.columns.begin());
    if (errors[i].empty()) {
      m.at(row, col) = results[i];
    } else {
      table.failures.push_back({records[i].path, errors[i]});
    }
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    m.actors[r].complete = std::none_of(row.begin(), row.end(), [](double v) { return std::isnan(v); });
  }
  return table;
}

std::vector<MissingCell> missing_cells(const EntropyMatrix& m, int expected_actors) {
  std::map<int, std::size_t> row_of;
  int max_id = expected_actors;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    row_of[m.actors[r].actor_id] = r;
    max_id = std::max(max_id, m.actors[r].actor_id);
  }
  std::vector<MissingCell> out;
  for (int id = 1; id <= max_id; ++id) {
    const auto it = row_of.find(id);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (it == row_of.end() || std::isnan(m.at(it->second, c))) out.push_back({id, m.columns[c]});
    }
  }
  return out;
}

std::string describe_missing(const std::vector<MissingCell>& cells) {
  // Grouped as (actor, emotion) with the count of absent recordings.
  std::map<std::pair<int, Emotion>, int> grouped;
  for (const MissingCell& c : cells) ++grouped[{c.actor_id, c.column.emotion}];
  std::string out;
  for (const auto& [key, count] : grouped) {
    if (!out.empty()) out += "; ";
    out += "actor " + std::to_string(key.first) + " " + to_string(key.second) + " (" + std::to_string(count) +
           " missing)";
  }
  return out;
}

std::string entropy_table_to_csv(const EntropyMatrix& m) {
  std::string out = "actor,sex";
  for (const AudioColumn& c : m.columns) out += "," + c.label();
  out += '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += std::to_string(m.actors[r].actor_id) + "," + to_string(m.actors[r].sex);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out += ',';
      if (!std::isnan(m.at(r, c))) out += format_real(m.at(r, c));
    }
    out += '\n';
  }
  return out;
}

EntropyMatrix entropy_table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  EntropyMatrix m;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    const std::string where = "entropy table line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (f.size() < 3 || f[0] != "actor" || f[1] != "sex") {
        throw Error(ErrorKind::Format, where + "expected header 'actor,sex,<columns>'");
      }
      for (std::size_t i = 2; i < f.size(); ++i) m.columns.push_back(AudioColumn::from_label(f[i]));
      if (!std::is_sorted(m.columns.begin(), m.columns.end()) ||
          std::adjacent_find(m.columns.begin(), m.columns.end()) != m.columns.end()) {
        throw Error(ErrorKind::Format, where + "columns must be distinct and in script order");
      }
      header_seen = true;
      continue;
    }
    if (f.size() != m.cols() + 2) {
      throw Error(ErrorKind::Format, where + "expected " + std::to_string(m.cols() + 2) + " fields");
    }
    ActorRow row;
    try {
      row.actor_id = parse_int(f[0], "actor");
      row.sex = sex_from_string(f[1]);
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    }
    if (!m.actors.empty() && m.actors.back().actor_id >= row.actor_id) {
      throw Error(ErrorKind::Format, where + "actor rows must be strictly increasing");
    }
    for (std::size_t i = 2; i < f.size(); ++i) {
      double v = std::nan("");
      if (!f[i].empty()) {
        auto [ptr, ec] = std::from_chars(f[i].data(), f[i].data() + f[i].size(), v);
        if (ec != std::errc() || ptr != f[i].data() + f[i].size() || !std::isfinite(v)) {
          throw Error(ErrorKind::Format, where + "not a finite number: '" + f[i] + "'");
        }
      }
      row.complete = row.complete && !std::isnan(v);
      m.values.push_back(v);
    }
    m.actors.push_back(row);
  }
  if (!header_seen) throw Error(ErrorKind::Format, "entropy table is empty");
  return m;
}

std::vector<LabeledPoint> build_experiment1(const EntropyMatrix& m, bool include_neutral) {
  require_complete(m);
  std::vector<LabeledPoint> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Emotion e = m.columns[c].emotion;
      if (!include_neutral && e == Emotion::Neutral) continue;
      out.push_back({{m.at(r, c)}, code(e), Provenance{m.actors[r].actor_id, code(e), static_cast<int>(c), {{r, c}}}});
    }
  }
  return out;
}

std::vector<LabeledPoint> build_experiment2(const EntropyMatrix& m) {
  require_complete(m);
  std::vector<LabeledPoint> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    LabeledPoint p;
    p.label = code(m.columns[c].emotion);
    Provenance prov{0, p.label, static_cast<int>(c), {}};
    for (std::size_t r = 0; r < m.rows(); ++r) {
      p.features.push_back(m.at(r, c));
      prov.cells.emplace_back(r, c);
    }
    p.provenance = std::move(prov);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LabeledPoint> build_experiment3(const EntropyMatrix& m) {
  require_complete(m);
  std::vector<LabeledPoint> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (int e = code(Emotion::Calm); e <= kEmotionCount; ++e) {
      LabeledPoint p;
      p.label = e;
      Provenance prov{m.actors[r].actor_id, e, -1, {}};
      // Columns are sorted by (emotion, intensity, statement, repetition).
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (code(m.columns[c].emotion) != e) continue;
        p.features.push_back(m.at(r, c));
        prov.cells.emplace_back(r, c);
      }
      if (p.features.size() != kExperiment3Features) {
        throw Error(ErrorKind::Incomplete, "actor " + std::to_string(m.actors[r].actor_id) + " has " +
                                               std::to_string(p.features.size()) + " " +
                                               to_string(static_cast<Emotion>(e)) + " recordings, expected " +
                                               std::to_string(kExperiment3Features));
      }
      p.provenance = std::move(prov);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<LabeledPoint> build_experiment(int id, const EntropyMatrix& m, const RunConfig& config) {
  switch (id) {
    case 1:
      return build_experiment1(m, config.include_neutral);
    case 2:
      return build_experiment2(m);
    case 3:
      return build_experiment3(m);
    default:
      throw Error(ErrorKind::InvalidArgument, "experiment id must be 1, 2 or 3");
  }
}

KernelSpec configured_kernel(const RunConfig& config, KernelFamily fallback, std::span<const LabeledPoint> train) {
  const KernelFamily family = config.kernel.empty() ? fallback : kernel_family_from_string(config.kernel);
  switch (family) {
    case KernelFamily::Linear:
      return KernelSpec::linear();
    case KernelFamily::Polynomial:
      return KernelSpec::polynomial(config.degree, config.offset);
    case KernelFamily::Gaussian:
      return KernelSpec::gaussian(config.sigma > 0.0 ? config.sigma : median_pairwise_distance(train));
  }
  return KernelSpec::linear();
}

namespace {

std::vector<LabeledPoint> pick(const std::vector<LabeledPoint>& points, const std::vector<std::size_t>& idx) {
  std::vector<LabeledPoint> out;
  for (std::size_t i : idx) out.push_back(points[i]);
  return out;
}

double score(const MulticlassModel& model, const std::vector<LabeledPoint>& points) {
  std::vector<int> truth;
  for (const LabeledPoint& p : points) truth.push_back(p.label);
  return accuracy(model.predict(points), truth);
}

}  // namespace

ExperimentResult run_experiment(int id, const EntropyMatrix& m, const RunConfig& config) {
  config.validate();
  ExperimentResult result;
  result.experiment = id;
  result.config = config;
  const std::vector<LabeledPoint> points = build_experiment(id, m, config);
  result.points = points.size();
  result.dimension = points.empty() ? 0 : points.front().features.size();

  if (id == 1) {
    result.params = {configured_kernel(config, KernelFamily::Linear, points), config.C, config.tol};
    result.cv = kfold_cross_validate(points, result.params, config.k, config.seed, config.standardize);
    if (config.grid_search) {
      result.grid = select_best_kernel(points, default_kernel_grid(points), config.k, config.seed, config.jobs,
                                       config.tol, config.standardize);
    }
  } else if (id == 2) {
    auto [train_idx, test_idx] = stratified_split(points, config.split_train_size, config.seed);
    std::vector<LabeledPoint> train = pick(points, train_idx);
    std::vector<LabeledPoint> full = points;
    if (config.standardize) standardize(train, full);
    const std::vector<LabeledPoint> test = pick(full, test_idx);
    result.params = {configured_kernel(config, KernelFamily::Gaussian, train), config.C, config.tol};
    const MulticlassModel model = train_multiclass(train, result.params);
    result.train_size = train.size();
    result.test_size = test.size();
    result.train_accuracy = score(model, train);
    result.test_accuracy = score(model, test);
    result.full_accuracy = score(model, full);
    result.cv = kfold_cross_validate(points, result.params, config.k, config.seed, config.standardize);
    if (config.grid_search) {
      result.grid = select_best_kernel(points, default_kernel_grid(points), config.k, config.seed, config.jobs,
                                       config.tol, config.standardize);
    }
  } else {
    result.params = {configured_kernel(config, KernelFamily::Polynomial, points), config.C, config.tol};
    for (int a = code(Emotion::Calm); a <= kEmotionCount; ++a) {
      for (int b = a + 1; b <= kEmotionCount; ++b) {
        std::vector<LabeledPoint> pair;
        for (const LabeledPoint& p : points) {
          if (p.label == a || p.label == b) pair.push_back(p);
        }
        const SvmParams params{configured_kernel(config, KernelFamily::Polynomial, pair), config.C, config.tol};
        result.pairwise.push_back({static_cast<Emotion>(a), static_cast<Emotion>(b),
                                   kfold_cross_validate(pair, params, config.k, config.seed, config.standardize)});
      }
    }
  }
  return result;
}

nlohmann::json to_json(const KernelSpec& k) {
  nlohmann::json j{{"family", to_string(k.family)}};
  if (k.family == KernelFamily::Polynomial) {
    j["degree"] = k.degree;
    j["offset"] = k.offset;
  }
  if (k.family == KernelFamily::Gaussian) j["sigma"] = k.sigma;
  if (k.scale != 1.0) j["scale"] = k.scale;
  return j;
}

namespace {

nlohmann::json cv_json(const CrossValidation& cv) {
  return {{"fold_accuracies", cv.fold_accuracies}, {"mean", cv.mean}, {"unstratified", cv.unstratified}};
}

}  // namespace

nlohmann::json to_json(const GridSearchResult& g) {
  nlohmann::json cells = nlohmann::json::array();
  for (const GridCell& c : g.cells) {
    cells.push_back({{"kernel", to_json(c.params.kernel)}, {"C", c.params.C}, {"cv", cv_json(c.cv)}});
  }
  return {{"best", {{"kernel", to_json(g.best.kernel)}, {"C", g.best.C}, {"mean_accuracy", g.best_accuracy}}},
          {"cells", cells}};
}

nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json j;
  j["experiment"] = r.experiment;
  j["points"] = r.points;
  j["dimension"] = r.dimension;
  j["kernel"] = to_json(r.params.kernel);
  j["C"] = r.params.C;
  if (r.cv) j["cross_validation"] = cv_json(*r.cv);
  if (r.train_accuracy) {
    j["split"] = {{"train_size", r.train_size},
                  {"test_size", r.test_size},
                  {"train_accuracy", *r.train_accuracy},
                  {"test_accuracy", *r.test_accuracy},
                  {"full_accuracy", *r.full_accuracy}};
  }
  if (!r.pairwise.empty()) {
    nlohmann::json pairs = nlohmann::json::array();
    double sum = 0.0;
    for (const PairwiseAccuracy& p : r.pairwise) {
      pairs.push_back({{"first", to_string(p.first)},
                       {"second", to_string(p.second)},
                       {"kernel", to_json(r.params.kernel)},
                       {"cross_validation", cv_json(p.cv)}});
      sum += p.cv.mean;
    }
    j["pairwise"] = pairs;
    j["pairwise_mean_accuracy"] = sum / static_cast<double>(r.pairwise.size());
  }
  if (r.grid) j["kernel_selection"] = to_json(*r.grid);
  j["config"] = to_json(r.config);
  return j;
}

std::string pairwise_to_csv(const std::vector<PairwiseAccuracy>& pairs) {
  std::string out = "emotion";
  for (int e = code(Emotion::Calm); e <= kEmotionCount; ++e) out += "," + to_string(static_cast<Emotion>(e));
  out += '\n';
  for (int a = code(Emotion::Calm); a <= kEmotionCount; ++a) {
    out += to_string(static_cast<Emotion>(a));
    for (int b = code(Emotion::Calm); b <= kEmotionCount; ++b) {
      out += ',';
      for (const PairwiseAccuracy& p : pairs) {
        if (code(p.first) == a && code(p.second) == b) out += format_real(p.cv.mean);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace entropic
