/* Copyright 2026 The qoc Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Run configuration, benchmark harness, bundles and the command-line front end.

#include "qoc/bundle.hpp"
#include "qoc/pulse_io.hpp"
#include "qoc/sample_registry.hpp"
#include "qoc/target_states.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qoc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("qoc_harness_" + name);
  fs::remove_all(p);
  return p;
}

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

CliRun cli(const std::string& args) {
  const fs::path out = scratch("stdout.txt"), err = scratch("stderr.txt");
  const std::string cmd = std::string(QOC_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

double field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string k, v;
  while (in >> k >> v)
    if (k == key) return std::stod(v);
  FAIL("missing field " << key);
  return 0.0;
}

// Small, fast budgets on a coarse grid (single qubits and short chains).
const char* kSmallConfig = R"json({
  "initial_fraction": 1.0,
  "sc": {"dt": 0.5, "sizes": {
    "1": {"grape_segments": 20, "igrape_budgets": []},
    "2": {"grape_segments": 40, "igrape_budgets": [32]},
    "3": {"grape_segments": 60, "igrape_budgets": [38, 32]},
    "4": {"grape_segments": 100, "igrape_budgets": [38, 32]}}},
  "sizes": [2, 3], "seeds": 2
})json";

fs::path small_config_file() {
  const fs::path p = scratch("config.json");
  std::ofstream(p) << kSmallConfig;
  return p;
}

}  // namespace

TEST_CASE("run configuration defaults and overlays") {
  RunConfig d = RunConfig::defaults();
  CHECK(d.tolerance == 3e-3);
  CHECK(d.nmr.dt == 5e-6);
  CHECK(d.budget(Platform::Nmr, 2).grape_segments == 600);
  CHECK(d.budget(Platform::Nmr, 3).igrape_budgets == std::vector<int>{800, 700});
  CHECK(d.budget(Platform::Superconducting, 4).igrape_budgets == std::vector<int>{380, 320});
  CHECK_THROWS_AS(d.budget(Platform::Superconducting, 11), std::invalid_argument);

  RunConfig c = RunConfig::from_json(nlohmann::json::parse(kSmallConfig));
  CHECK(c.sc.dt == 0.5);
  CHECK(c.budget(Platform::Superconducting, 2).grape_segments == 40);
  CHECK(c.budget(Platform::Nmr, 2).grape_segments == 600);  // untouched defaults survive
  CHECK(c.seeds == 2);

  RunConfig again = RunConfig::from_json(c.to_json());
  CHECK(again.to_json() == c.to_json());
  CHECK(config_hash(again.to_json()) == config_hash(c.to_json()));
  CHECK(config_hash(c.to_json()) != config_hash(d.to_json()));
  CHECK(config_hash(c.to_json()).size() == 16);

  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"tolerance": 0})")), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"algorithms": ["simplex"]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"frame": "lab"})")), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/qoc.json"), std::invalid_argument);
}

TEST_CASE("prepared samples") {
  const Sample& sc = sample_registry().find("sc-chain-12");
  Sample s = prepare_sample(sc, 3, "zero-offsets");
  CHECK(sample_size(s) == 3);
  for (const auto& q : std::get<ScSample>(s).qubits) CHECK(q.omega_ghz == 0.0);
  Sample raw = prepare_sample(sc, 3, "sample");
  CHECK(std::get<ScSample>(raw).qubits[0].omega_ghz == 4.978);
  CHECK_THROWS_AS(prepare_sample(sc, 13, "sample"), std::invalid_argument);
}

TEST_CASE("benchmark rows, CSV and determinism") {
  RunConfig c = RunConfig::from_json(nlohmann::json::parse(kSmallConfig));
  c.sizes = {2};
  c.seeds = 1;
  c.algorithms = {"grape"};
  const Sample& sc = sample_registry().find("sc-chain-12");
  auto rows = run_benchmark(sc, c);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].size == 2);
  CHECK(rows[0].error.empty());
  CHECK(rows[0].converged);

  c.sizes = {2, 3};
  c.seeds = 2;
  c.algorithms = {"grape", "igrape"};
  auto a = run_benchmark(sc, c);
  c.run_threads = 3;
  auto b = run_benchmark(sc, c);
  REQUIRE(a.size() == 8);
  REQUIRE(b.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].fidelity == b[i].fidelity);
    CHECK(a[i].iterations == b[i].iterations);
    CHECK(a[i].algorithm == b[i].algorithm);
    CHECK(a[i].size == b[i].size);
  }

  std::stringstream ss;
  write_benchmark_csv(ss, a);
  std::string header;
  std::getline(ss, header);
  CHECK(header == kBenchmarkCsvHeader);
  ss.seekg(0);
  auto back = read_benchmark_csv(ss);
  REQUIRE(back.size() == a.size());
  CHECK(back[3].fidelity == a[3].fidelity);
  CHECK(back[3].wall_time_s == a[3].wall_time_s);
  CHECK(back[3].config_hash == a[3].config_hash);

  // failures become rows, not exceptions
  c.sizes = {5};
  c.sc.sizes.erase(5);  // no budget for this size
  c.seeds = 1;
  auto failed = run_benchmark(sc, c);
  REQUIRE(failed.size() == 2);
  CHECK_FALSE(failed[0].error.empty());
  CHECK_FALSE(failed[0].converged);
}

TEST_CASE("slope fit and summary") {
  CHECK(fit_slope({1, 2, 3}, {2, 4, 6}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(fit_slope({1}, {1}), std::invalid_argument);
  std::vector<BenchmarkRecord> rows;
  for (int size = 2; size <= 4; ++size)
    for (int s = 0; s < 2; ++s) {
      rows.push_back({size, "grape", s, std::exp2(2.0 * size), 0, 1, 1, true, "h", ""});
      rows.push_back({size, "igrape", s, std::exp2(1.0 * size), 0, 1, 1, s == 0, "h", ""});
    }
  auto sum = summarize(rows);
  CHECK(sum.at("grape").log2_slope == doctest::Approx(2.0));
  CHECK(sum.at("igrape").log2_slope == doctest::Approx(1.0));
  CHECK(sum.at("igrape").converged.at(3) == 1);
  CHECK(sum.at("grape").mean_wall_time_s.at(2) == doctest::Approx(16.0));
}

TEST_CASE("entropy table") {
  RunConfig c = RunConfig::defaults();
  const Sample& sc = sample_registry().find("sc-chain-12");
  auto rows = run_entropy(sc, 5, {1, 3}, 4, c, false);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_entropy < 1e-6);
  CHECK(rows[1].mean_entropy > rows[0].mean_entropy);
  CHECK(rows[0].ratio == 0.0);
  CHECK_THROWS_AS(run_entropy(sc, 5, {1}, 0, c, false), std::invalid_argument);
}

TEST_CASE("bundles round trip and re-verify") {
  RunConfig c = RunConfig::from_json(nlohmann::json::parse(kSmallConfig));
  const Sample s = prepare_sample(sample_registry().find("sc-chain-12"), 3, c.frame);
  RunOutcome r = run_algorithm("igrape", s, ghz(3), c, 5);
  REQUIRE(r.converged);
  const fs::path dir = scratch("bundle");
  write_bundle(dir, make_bundle(r, s, ghz(3), c, 5));
  CHECK(fs::exists(dir / "manifest.json"));
  Bundle b = read_bundle(dir);
  CHECK(b.program.blocks.size() == r.program.blocks.size());
  CHECK(std::abs(verify_bundle(b) - r.fidelity) < 1e-9);
  CHECK(b.config_hash == config_hash(c.to_json()));
  fs::remove(dir / "target.txt");
  CHECK_THROWS_AS(read_bundle(dir), std::invalid_argument);
  CHECK_THROWS_AS(read_bundle(scratch("missing")), std::invalid_argument);
}

TEST_CASE("command line: optimize and verify") {
  const fs::path cfg = small_config_file();
  const fs::path flip = scratch("one.txt");
  std::ofstream(flip) << "1 1 0\n";

  const fs::path g = scratch("grape_flip");
  CliRun r = cli("optimize --algorithm grape --sample sc-chain-12 --qubits 1 --target file --target-file " +
                 flip.string() + " --config " + cfg.string() + " --out " + g.string());
  CHECK(r.status == 0);
  CHECK(fs::exists(g / "block_00_grape.pulse"));
  CHECK(field(r.out, "fidelity") >= 0.997);

  const fs::path ig = scratch("igrape_ghz");
  r = cli("optimize --algorithm igrape --platform sc --sample sc-chain-12 --qubits 4 --config " + cfg.string() +
          " --out " + ig.string());
  CHECK(r.status == 0);
  CHECK(field(r.out, "fidelity") >= 0.997);
  std::ifstream mf(ig / "manifest.json");
  nlohmann::json m = nlohmann::json::parse(mf);
  CHECK(m.at("blocks").size() == 3);  // closure rotations, Step 2, Step 1
  CHECK(m.at("blocks")[1].at("file") == "block_01_step2.pulse");
  CHECK(fs::exists(ig / "block_02_step1.pulse"));

  r = cli("verify --bundle " + ig.string());
  CHECK(r.status == 0);
  CHECK(std::abs(field(r.out, "fidelity") - field(r.out, "bundled_fidelity")) < 1e-9);

  // tamper with one pulse row: fidelity drops and verify reports failure
  PulseFile pf = read_pulse_file(ig / "block_02_step1.pulse");
  pf.pulses.amplitudes.row(10).setConstant(pf.pulses.upper(0));
  pf.pulses.amplitudes.row(11).setConstant(pf.pulses.lower(0));
  write_pulse_file(ig / "block_02_step1.pulse", pf.pulses, pf.platform);
  r = cli("verify --bundle " + ig.string());
  CHECK(r.status == 2);
  CHECK(field(r.out, "fidelity") < field(r.out, "bundled_fidelity"));

  std::ofstream(ig / "manifest.json") << "{not json";
  CHECK(cli("verify --bundle " + ig.string()).status == 1);
}

TEST_CASE("command line: empty program for the all-zero target") {
  const fs::path zero = scratch("zero.txt");
  std::ofstream(zero) << "0 1 0\n";
  const fs::path out = scratch("zero_bundle");
  CliRun r = cli("optimize --sample sc-chain-12 --qubits 3 --target file --target-file " + zero.string() +
                 " --out " + out.string());
  CHECK(r.status == 0);
  r = cli("verify --bundle " + out.string());
  CHECK(r.status == 0);
  CHECK(field(r.out, "fidelity") == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("command line: errors") {
  CliRun r = cli("optimize --algorithm grape");
  CHECK(r.status == 1);
  CHECK(r.err.find("--sample") != std::string::npos);
  CHECK(cli("optimize --sample no-such-sample").status == 1);
  CHECK(cli("optimize --sample sc-chain-12 --platform nmr").status == 1);
  CHECK(cli("entropy --seeds 0 --no-timing").status == 1);
  CHECK(cli("frobnicate").status == 1);
  r = cli("samples");
  CHECK(r.status == 0);
  CHECK(r.out.find("crotonic-acid nmr 7") != std::string::npos);
}

TEST_CASE("command line: benchmark CSV") {
  const fs::path cfg = small_config_file();
  const fs::path csv = scratch("bench.csv");
  CliRun r = cli("benchmark --config " + cfg.string() + " --sizes 2 --seeds 1 --algorithms grape --out " + csv.string());
  CHECK(r.status == 0);
  std::ifstream in(csv);
  auto rows = read_benchmark_csv(in);
  CHECK(rows.size() == 1);
  CHECK(r.out.find("log2_runtime_slope") != std::string::npos);

  const fs::path csv2 = scratch("bench2.csv");
  cli("benchmark --config " + cfg.string() + " --sizes 2 --seeds 1 --algorithms grape --out " + csv2.string());
  std::ifstream in2(csv2);
  auto rows2 = read_benchmark_csv(in2);
  REQUIRE(rows2.size() == 1);
  CHECK(rows2[0].fidelity == rows[0].fidelity);
  CHECK(rows2[0].iterations == rows[0].iterations);
}
