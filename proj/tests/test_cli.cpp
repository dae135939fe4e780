// Copyright 2026 The weakmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "weakmeas/cli/commands.hpp"
#include "weakmeas/cli/table.hpp"
#include "weakmeas/rng.hpp"

using namespace weakmeas;
using namespace weakmeas::cli;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("weakmeas_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string write_config(const fs::path& dir, const std::string& body) {
  const fs::path file = dir / "run.cfg";
  std::ofstream out(file);
  out << body;
  return file.string();
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Small but fast MH configuration for end-to-end runs.
std::string small_run_body(const std::string& extra = "") {
  return "n_pointers = 200\n"
         "theta = 0, pi/4\n"
         "mh.iterations = 7000\n"
         "mh.burn_in = 2000\n"
         "mh.thinning = 5\n"
         "mh.chains = 2\n"
         "mh.seed = 5\n" +
         extra;
}

}  // namespace

TEST_CASE("angle parsing") {
  CHECK(parse_angle("0") == 0.0);
  CHECK(parse_angle("0.125") == 0.125);
  CHECK(parse_angle("pi") == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(parse_angle("pi/4") ==
        doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(parse_angle("3pi/8") ==
        doctest::Approx(3 * std::numbers::pi / 8).epsilon(1e-15));
  CHECK(parse_angle("3*pi/8") ==
        doctest::Approx(3 * std::numbers::pi / 8).epsilon(1e-15));
  CHECK(parse_angle("-pi/2") ==
        doctest::Approx(-std::numbers::pi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
}

TEST_CASE("config defaults carry the published scenario") {
  const RunConfig cfg = RunConfig::defaults();
  CHECK(cfg.n_pointers == 200);
  CHECK(cfg.g == 0.1);
  CHECK(cfg.pointer_s == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(cfg.alpha == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-15));
  CHECK(cfg.beta == doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-15));
  REQUIRE(cfg.thetas.size() == 2);
  CHECK(cfg.hist.bins == 50);
  CHECK(cfg.hist.xi_min == -0.25);
  CHECK(cfg.hist.xi_max == 0.25);
  validate(cfg.scenario());
  CHECK(cfg.mh_config().burn_in == 2000);  // 10 N
}

TEST_CASE("config file parsing and diagnostics") {
  TempDir dir;
  const std::string path = write_config(dir.path,
                                        "# comment line\n"
                                        "n_pointers = 400\n"
                                        "theta = 0, pi/4, 3pi/8\n"
                                        "mh.seed = 42\n"
                                        "mh.init = branch:1\n"
                                        "hist.bins = 64\n"
                                        "emit_plot = true\n");
  const RunConfig cfg = parse_config_file(path);
  CHECK(cfg.n_pointers == 400);
  CHECK(cfg.thetas.size() == 3);
  CHECK(cfg.mh.seed == 42);
  CHECK(cfg.mh.init == InitPolicy::at_branch_mean);
  CHECK(cfg.mh.init_branch == 1);
  CHECK(cfg.hist.bins == 64);
  CHECK(cfg.emit_plot);

  const std::string bad_key = write_config(dir.path, "alpha = 0.5\nnope = 1\n");
  try {
    parse_config_file(bad_key);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":2") != std::string::npos);    // line number
    CHECK(msg.find("nope") != std::string::npos);  // offending key
  }

  const std::string bad_norm =
      write_config(dir.path, "alpha = 0.5\nbeta = 0.5\ngamma = 0.5\n");
  CHECK_THROWS_AS(parse_config_file(bad_norm), ConfigError);

  const std::string bad_bins = write_config(dir.path, "hist.bins = 1\n");
  CHECK_THROWS_AS(parse_config_file(bad_bins), ConfigError);

  const std::string bad_range =
      write_config(dir.path, "hist.min = 0.3\nhist.max = -0.3\n");
  CHECK_THROWS_AS(parse_config_file(bad_range), ConfigError);
}

TEST_CASE("double formatting round-trips bit for bit") {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::exp(rng.gauss() * 20.0) * (rng.uniform01() < 0.5 ? -1 : 1);
    const double back = std::strtod(format_double(v).c_str(), nullptr);
    CHECK(back == v);
  }
  CHECK(std::strtod(format_double(0.1).c_str(), nullptr) == 0.1);
}

TEST_CASE("table CSV round trip") {
  TempDir dir;
  Table table;
  table.metadata = {"seed = 9", "n_pointers = 200"};
  table.columns = {"a", "b", "c"};
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    table.rows.push_back({rng.gauss(), rng.gauss() * 1e-9, rng.gauss() * 1e9});
  }
  const fs::path file = dir.path / "t.csv";
  table.write_csv(file);
  const Table back = Table::read_csv(file);
  CHECK(back.metadata == table.metadata);
  CHECK(back.columns == table.columns);
  REQUIRE(back.rows.size() == table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      CHECK(back.rows[r][c] == table.rows[r][c]);  // bit-for-bit
    }
  }
}

TEST_CASE("branches command output") {
  std::ostringstream out;
  CHECK(cmd_branches(RunConfig::defaults(), out) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("theta,outcome,") == 0);
  CHECK(text.find("0.92221") != std::string::npos);
  CHECK(text.find("0.87709") != std::string::npos);
}

TEST_CASE("xi-oracle densities are theta-independent in total") {
  TempDir dir;
  RunConfig cfg = RunConfig::defaults();
  cfg.out_dir = (dir.path / "out").string();
  std::ostringstream log;
  REQUIRE(cmd_xi_oracle(cfg, log) == kExitOk);

  const Table t0 = Table::read_csv(fs::path(cfg.out_dir) / "xi_oracle_0.csv");
  const Table t1 = Table::read_csv(fs::path(cfg.out_dir) / "xi_oracle_1.csv");
  REQUIRE(t0.rows.size() == 50);
  REQUIRE(t1.rows.size() == 50);
  for (std::size_t i = 0; i < t0.rows.size(); ++i) {
    CHECK(t0.rows[i][3] == t1.rows[i][3]);  // density_total column
    CHECK(std::abs(t0.rows[i][1] + t0.rows[i][2] - t0.rows[i][3]) <= 1e-12);
    CHECK(t0.rows[i][3] >= 0.0);
  }
}

TEST_CASE("mh-run writes mass-consistent histograms and diagnostics") {
  TempDir dir;
  RunConfig cfg = RunConfig::defaults();
  cfg.out_dir = (dir.path / "out").string();
  cfg.mh.iterations = 7000;
  cfg.mh.burn_in = 2000;
  cfg.mh.chains = 2;
  cfg.emit_plot = true;
  std::ostringstream log;
  REQUIRE(cmd_mh_run(cfg, log) == kExitOk);
  CHECK(log.str().find("acceptance=") != std::string::npos);
  CHECK(log.str().find("mode_fractions=") != std::string::npos);

  for (const char* name : {"mh_hist_0.csv", "mh_hist_1.csv"}) {
    const Table t = Table::read_csv(fs::path(cfg.out_dir) / name);
    REQUIRE(t.columns.size() == 5);
    REQUIRE(t.rows.size() == 50);
    double mass = 0.0;
    for (const auto& row : t.rows) {
      const double width = row[1] - row[0];
      mass += (row[2] + row[3]) * width;
      CHECK(std::abs(row[2] + row[3] - row[4]) <= 1e-15);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(0.01));
  }
  CHECK(fs::exists(fs::path(cfg.out_dir) / "mh_hist_0.svg"));
  const std::string svg = read_file(fs::path(cfg.out_dir) / "mh_hist_0.svg");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("mh-run output is byte-identical across repeat runs") {
  TempDir dir;
  const std::string cfg_path = write_config(dir.path, small_run_body());
  std::ostringstream out, err;
  const auto run = [&](const std::string& subdir) {
    return run_cli({"mh-run", "--config", cfg_path, "--out",
                    (dir.path / subdir).string()},
                   out, err);
  };
  REQUIRE(run("a") == kExitOk);
  REQUIRE(run("b") == kExitOk);
  for (const char* name : {"mh_hist_0.csv", "mh_hist_1.csv"}) {
    const std::string a = read_file(dir.path / "a" / name);
    const std::string b = read_file(dir.path / "b" / name);
    CHECK(!a.empty());
    CHECK(a == b);
  }
}

TEST_CASE("total histogram column is theta-independent within noise") {
  TempDir dir;
  RunConfig cfg = RunConfig::defaults();
  cfg.out_dir = (dir.path / "out").string();
  cfg.mh.iterations = 102000;
  cfg.mh.burn_in = 2000;
  cfg.mh.chains = 6;
  std::ostringstream log;
  REQUIRE(cmd_mh_run(cfg, log) == kExitOk);
  const Table t0 = Table::read_csv(fs::path(cfg.out_dir) / "mh_hist_0.csv");
  const Table t1 = Table::read_csv(fs::path(cfg.out_dir) / "mh_hist_1.csv");
  double l1 = 0.0;
  for (std::size_t i = 0; i < t0.rows.size(); ++i) {
    const double width = t0.rows[i][1] - t0.rows[i][0];
    l1 += std::abs(t0.rows[i][4] - t1.rows[i][4]) * width;
  }
  CHECK(0.5 * l1 <= 0.08);  // both estimate the same xi law
}

TEST_CASE("one-shot command records positions and their mean") {
  TempDir dir;
  const std::string cfg_path = write_config(
      dir.path, "n_pointers = 100\nmh.iterations = 3000\nmh.burn_in = "
                "1000\nmh.seed = 12\n");
  std::ostringstream out, err;
  REQUIRE(run_cli({"one-shot", "--config", cfg_path, "--out",
                   (dir.path / "o").string(), "--theta", "pi/4", "--outcome",
                   "-"},
                  out, err) == kExitOk);
  REQUIRE(run_cli({"one-shot", "--config", cfg_path, "--out",
                   (dir.path / "o2").string(), "--theta", "pi/4", "--outcome",
                   "-"},
                  out, err) == kExitOk);
  CHECK(read_file(dir.path / "o" / "one_shot.csv") ==
        read_file(dir.path / "o2" / "one_shot.csv"));

  const Table t = Table::read_csv(dir.path / "o" / "one_shot.csv");
  REQUIRE(t.rows.size() == 100);
  double mean = 0.0;
  for (const auto& row : t.rows) mean += row[1];
  mean /= 100.0;
  bool found = false;
  for (const auto& m : t.metadata) {
    if (m.rfind("xi_mean = ", 0) == 0) {
      found = true;
      CHECK(std::strtod(m.substr(10).c_str(), nullptr) ==
            doctest::Approx(mean).epsilon(1e-12));
    }
  }
  CHECK(found);
}

TEST_CASE("infer command") {
  std::ostringstream out, err;
  REQUIRE(run_cli({"infer", "--xi", "-0.15", "--theta", "0"}, out, err) ==
          kExitOk);
  const std::string text = out.str();
  CHECK(text.find("p_plus") != std::string::npos);
  // second line, third field is p_plus
  std::stringstream ss(text);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  std::stringstream rs(row);
  std::string cell;
  std::getline(rs, cell, ',');
  std::getline(rs, cell, ',');
  std::getline(rs, cell, ',');
  CHECK(std::strtod(cell.c_str(), nullptr) >= 0.999);
}

TEST_CASE("exit codes") {
  std::ostringstream out, err;
  CHECK(run_cli({"branches", "--config", "/no/such/file"}, out, err) ==
        kExitConfigError);
  CHECK(run_cli({"bogus-subcommand"}, out, err) == kExitConfigError);

  TempDir dir;
  const std::string bad =
      write_config(dir.path, "alpha = 0.9\nbeta = 0.9\ngamma = 0.9\n");
  CHECK(run_cli({"xi-oracle", "--config", bad}, out, err) == kExitConfigError);

  // posterior undefined far outside the support -> sampler-failure code
  CHECK(run_cli({"infer", "--xi", "1e6", "--theta", "0"}, out, err) ==
        kExitSamplerFailure);
}

TEST_CASE("verify command fails under weight fault injection") {
  TempDir dir;
  // small N keeps the MH part of the suite quick
  const std::string cfg_path = write_config(
      dir.path,
      "n_pointers = 60\nmh.iterations = 9000\nmh.burn_in = 600\nmh.seed = 2\n");
  std::ostringstream out, err;
  CHECK(run_cli({"verify", "--config", cfg_path, "--corrupt-weights", "1e-6"},
                out, err) == kExitVerifyFailure);
  CHECK(out.str().find("[FAIL] no-signaling") != std::string::npos);
}
