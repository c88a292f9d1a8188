#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "support.hpp"

using namespace entropic;
using namespace entropic::testing;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

// Runs the CLI with `args` (already shell-quoted) inside `dir`.
RunResult run_cli(const TempDir& dir, const std::string& args, const std::string& env = "") {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string command = "cd '" + dir.path().string() + "' && " + env + (env.empty() ? "" : " ") + "'" +
                              ENTROPIC_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(command.c_str());
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), read_text(out), read_text(err)};
}

EntropyMatrix without_actor(const EntropyMatrix& m, int actor) {
  EntropyMatrix out{{}, m.columns, {}};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.actors[r].actor_id == actor) continue;
    out.actors.push_back(m.actors[r]);
    const auto row = m.row(r);
    out.values.insert(out.values.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace

TEST_CASE("entropy reports every readable file and fails on the rest") {
  TempDir dir("cli_entropy");
  write_signal_csv(dir / "five.csv", {1, 5, 2, 6, 3});
  write_signal_csv(dir / "mono.csv", {1, 2, 3, 4});
  const RunResult r = run_cli(dir, "entropy five.csv missing.csv mono.csv");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("five.csv,5,5,3,1.0397207708399179") != std::string::npos);
  CHECK(r.out.find("mono.csv,4,4,1,0") != std::string::npos);
  CHECK(r.out.find("missing.csv") == std::string::npos);
  CHECK(r.err.find("missing.csv") != std::string::npos);

  CHECK(run_cli(dir, "entropy five.csv mono.csv").exit_code == 0);
}

TEST_CASE("barcode rows and empty input") {
  TempDir dir("cli_barcode");
  write_signal_csv(dir / "five.csv", {1, 5, 2, 6, 3});
  write_text(dir / "empty.csv", "");
  const RunResult ok = run_cli(dir, "barcode five.csv");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "birth,death\n1,inf\n2,5\n3,6\n");
  const RunResult bad = run_cli(dir, "barcode empty.csv");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("empty") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  TempDir dir("cli_usage");
  CHECK(run_cli(dir, "").exit_code == 2);
  CHECK(run_cli(dir, "experiment 4 x.csv").exit_code == 2);
  CHECK(run_cli(dir, "entropy --k nope a.csv").exit_code == 2);
  write_signal_csv(dir / "five.csv", {1, 5, 2, 6, 3});
  CHECK(run_cli(dir, "entropy --k 1 five.csv").exit_code == 2);
  write_text(dir / "bad.json", "{\"sead\": 3}");
  CHECK(run_cli(dir, "entropy --config bad.json five.csv").exit_code == 2);
}

TEST_CASE("configuration precedence: file < environment < flag") {
  TempDir dir("cli_config");
  write_signal_csv(dir / "five.csv", {1, 5, 2, 6, 3});
  write_text(dir / "cfg.json", "{\"seed\": 3, \"k\": 4}");
  auto seed_of = [&](const std::string& args, const std::string& env) {
    const RunResult r = run_cli(dir, args, env);
    REQUIRE(r.exit_code == 0);
    return nlohmann::json::parse(read_text(dir / "out" / "effective_config.json"));
  };
  auto cfg = seed_of("entropy --out-dir out five.csv", "");
  CHECK(cfg.at("seed") == 1);
  cfg = seed_of("entropy --out-dir out --config cfg.json five.csv", "");
  CHECK(cfg.at("seed") == 3);
  CHECK(cfg.at("k") == 4);
  cfg = seed_of("entropy --out-dir out --config cfg.json five.csv", "ENTROPIC_SEED=4");
  CHECK(cfg.at("seed") == 4);
  CHECK(cfg.at("k") == 4);
  cfg = seed_of("entropy --out-dir out --config cfg.json --seed 5 five.csv", "ENTROPIC_SEED=4");
  CHECK(cfg.at("seed") == 5);
  CHECK(fs::exists(dir / "out" / "entropy.csv"));
  CHECK(read_text(dir / "out" / "run.log").find("entropy") != std::string::npos);
}

TEST_CASE("experiment 1 on a separable corpus") {
  TempDir dir("cli_experiment");
  std::vector<int> actors;
  for (int a = 1; a <= 24; ++a) actors.push_back(a);
  write_corpus(dir.path(), actors, separable_signal);

  const RunResult r = run_cli(dir, "experiment 1 manifest.csv --no-grid --out-dir out");
  REQUIRE(r.exit_code == 0);
  const auto result = nlohmann::json::parse(read_text(dir / "out" / "experiment1.json"));
  CHECK(result.at("cross_validation").at("mean") == 1.0);
  const std::string table = read_text(dir / "out" / "entropy_table.csv");
  CHECK(std::count(table.begin(), table.end(), '\n') == 25);

  SUBCASE("reruns are byte-identical") {
    const std::string first = read_text(dir / "out" / "experiment1.json");
    REQUIRE(run_cli(dir, "experiment 1 manifest.csv --no-grid --out-dir out").exit_code == 0);
    CHECK(read_text(dir / "out" / "experiment1.json") == first);
    CHECK(read_text(dir / "out" / "entropy_table.csv") == table);
  }
  SUBCASE("entropy table input gives the same result") {
    REQUIRE(run_cli(dir, "experiment 1 out/entropy_table.csv --no-grid --out-dir out2").exit_code == 0);
    const auto again = nlohmann::json::parse(read_text(dir / "out2" / "experiment1.json"));
    CHECK(again.at("cross_validation") == result.at("cross_validation"));
  }
}

TEST_CASE("a missing actor is listed and fails the run") {
  TempDir dir("cli_missing");
  write_text(dir / "table.csv", entropy_table_to_csv(without_actor(random_matrix(8, 3), 7)));
  const RunResult r = run_cli(dir, "experiment 1 table.csv --no-grid --out-dir out");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("actor 7") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out" / "experiment1.json"));

  const RunResult expected = run_cli(dir, "experiment 2 table.csv --no-grid --out-dir out --actors 9");
  CHECK(expected.exit_code == 1);
  CHECK(expected.err.find("actor 9") != std::string::npos);
}

TEST_CASE("stats on block-constant and single-actor tables") {
  TempDir dir("cli_stats");
  // Male rows follow one profile and female rows another, so within-sex
  // correlations are exactly 1.
  const EntropyMatrix block = synthetic_matrix(6, [](std::size_t r, const AudioColumn& c) {
    const double x = code(c.emotion) + 0.1 * c.statement + 0.01 * c.repetition;
    return r % 2 == 0 ? x : x * x;
  });
  write_text(dir / "block.csv", entropy_table_to_csv(block));
  const RunResult r = run_cli(dir, "stats block.csv --out-dir out");
  REQUIRE(r.exit_code == 0);
  const std::string means = read_text(dir / "out" / "sex_means.csv");
  INFO(means);
  std::istringstream lines(means);
  std::string line;
  std::getline(lines, line);
  std::vector<std::vector<std::string>> cells;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::istringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    cells.push_back(fields);
  }
  REQUIRE(cells.size() == 2);
  CHECK(cells[0][0] == "male");
  CHECK(std::stod(cells[0][1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::stod(cells[1][2]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::stod(cells[0][2]) == std::stod(cells[1][1]));
  CHECK(std::stod(cells[0][2]) < 1.0);
  CHECK(cells[0][3] == "3");
  const std::string corr = read_text(dir / "out" / "correlation.csv");
  CHECK(corr.rfind("actor,1,2,3,4,5,6\n", 0) == 0);
  CHECK(fs::exists(dir / "out" / "boxplot.csv"));

  write_text(dir / "one.csv", entropy_table_to_csv(random_matrix(1, 2)));
  const RunResult one = run_cli(dir, "stats one.csv --out-dir one");
  REQUIRE(one.exit_code == 0);
  CHECK(read_text(dir / "one" / "sex_means.csv").find("undefined") != std::string::npos);
  CHECK(read_text(dir / "one" / "correlation.csv") == "actor,1\n1,1\n");
}
