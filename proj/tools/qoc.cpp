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

// qoc: pulse design and benchmarking front end.

#include "qoc/bundle.hpp"
#include "qoc/pulse_io.hpp"
#include "qoc/sample_registry.hpp"
#include "qoc/target_states.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace qoc;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct OptimizeArgs {
  std::string algorithm = "igrape";
  std::string platform;
  std::string sample;
  std::string sample_file;
  std::string target = "ghz";
  std::string target_file;
  int qubits = 0;
  int layers = 1;
  std::string config;
  std::string out = "qoc-out";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

struct BenchmarkArgs {
  std::string sample = "sc-chain-12";
  std::string config;
  std::vector<int> sizes;
  int seeds = -1;
  std::vector<std::string> algorithms;
  std::string out = "benchmark.csv";
};

struct EntropyArgs {
  std::string sample = "sc-chain-12";
  std::string config;
  int qubits = 5;
  std::vector<int> layers = {1, 3, 5, 7, 9};
  int seeds = 20;
  bool no_timing = false;
};

struct VerifyArgs {
  std::string bundle;
  std::string target_file;
};

RunConfig load_config(const std::string& path) { return path.empty() ? RunConfig::defaults() : RunConfig::load(path); }

Sample resolve_sample(const std::string& name, const std::string& file) {
  if (!file.empty()) return load_sample_file(file);
  return sample_registry().find(name);
}

int cmd_optimize(const OptimizeArgs& a) {
  RunConfig config = load_config(a.config);
  if (a.seed_given) config.seed = a.seed;
  const Sample base = resolve_sample(a.sample, a.sample_file);
  if (!a.platform.empty() && parse_platform(a.platform) != platform_of(base))
    throw std::invalid_argument("--platform " + a.platform + " does not match sample '" + sample_name(base) + "'");
  const Sample sample = prepare_sample(base, a.qubits, config.frame);
  const int n = sample_size(sample);

  StateVector target;
  if (a.target == "ghz") {
    target = ghz(n);
  } else if (a.target == "pqc") {
    target = pqc_state(PqcSpec::random(n, a.layers, config.seed));
  } else if (a.target == "file") {
    if (a.target_file.empty()) throw std::invalid_argument("--target file needs --target-file");
    target = read_state_file(a.target_file, std::vector<int>(static_cast<std::size_t>(n), 2));
    target.normalize();
  } else {
    throw std::invalid_argument("--target must be ghz, pqc or file");
  }

  const std::uint64_t seed = mix_seed(config.seed, {static_cast<std::uint64_t>(n), 0});
  const RunOutcome r = run_algorithm(a.algorithm, sample, target, config, seed);
  const Bundle b = make_bundle(r, sample, target, config, seed);
  write_bundle(a.out, b);
  std::cout << std::setprecision(12) << "algorithm " << r.algorithm << "\nsites " << n << "\nfidelity "
            << r.fidelity << "\nconverged " << (r.converged ? "yes" : "no") << "\nwall_time_s " << r.wall_time_s
            << "\niterations " << r.iterations << "\nbundle " << a.out << '\n';
  return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_benchmark(const BenchmarkArgs& a) {
  RunConfig config = load_config(a.config);
  if (!a.sizes.empty()) config.sizes = a.sizes;
  if (a.seeds >= 0) config.seeds = a.seeds;
  if (!a.algorithms.empty()) config.algorithms = a.algorithms;
  config.validate();
  const Sample& sample = sample_registry().find(a.sample);
  const auto records = run_benchmark(sample, config, [](const BenchmarkRecord& r) {
    std::cerr << "size " << r.size << ' ' << r.algorithm << " seed " << r.seed << ": "
              << (r.error.empty() ? (r.converged ? "converged" : "not converged") : "failed: " + r.error) << " in "
              << r.wall_time_s << " s\n";
  });
  std::ofstream out(a.out);
  if (!out) throw std::invalid_argument("cannot write --out " + a.out);
  write_benchmark_csv(out, records);
  write_summary(std::cout, summarize(records));
  return kExitOk;
}

int cmd_entropy(const EntropyArgs& a) {
  const RunConfig config = load_config(a.config);
  const auto rows =
      run_entropy(sample_registry().find(a.sample), a.qubits, a.layers, a.seeds, config, !a.no_timing);
  write_entropy_table(std::cout, rows);
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a) {
  Bundle b = read_bundle(a.bundle);
  if (!a.target_file.empty()) {
    b.target = read_state_file(a.target_file, b.target.site_dims());
    b.target.normalize();
  }
  const double f = verify_bundle(b);
  std::cout << std::setprecision(15) << "fidelity " << f << "\nbundled_fidelity " << b.fidelity << '\n';
  return f >= 1.0 - b.tolerance ? kExitOk : kExitNotConverged;
}

int cmd_samples() {
  for (const auto& name : sample_registry().names()) {
    const Sample& s = sample_registry().find(name);
    std::cout << name << ' ' << platform_name(platform_of(s)) << ' ' << sample_size(s) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qoc: optimal-control pulse design for state preparation"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "design a pulse program preparing a target state");
  o->add_option("--algorithm", opt.algorithm, "grape or igrape")->check(CLI::IsMember({"grape", "igrape"}));
  o->add_option("--platform", opt.platform, "nmr or sc (checked against the sample)")
      ->check(CLI::IsMember({"nmr", "sc"}));
  auto* sample_opt = o->add_option("--sample", opt.sample, "registry sample name");
  auto* sample_file_opt = o->add_option("--sample-file", opt.sample_file, "sample description JSON");
  sample_opt->excludes(sample_file_opt);
  o->add_option("--target", opt.target, "ghz, pqc or file")->check(CLI::IsMember({"ghz", "pqc", "file"}));
  o->add_option("--target-file", opt.target_file, "amplitude file for --target file");
  o->add_option("--qubits", opt.qubits, "use the first N sites of the sample")->check(CLI::PositiveNumber);
  o->add_option("--layers", opt.layers, "PQC layers for --target pqc")->check(CLI::PositiveNumber);
  o->add_option("--config", opt.config, "run configuration JSON");
  o->add_option("--out", opt.out, "bundle directory");
  o->add_option("--seed", opt.seed, "base seed (overrides the config)")->each([&](const std::string&) {
    opt.seed_given = true;
  });

  BenchmarkArgs bench;
  auto* b = app.add_subcommand("benchmark", "GRAPE vs iGRAPE runtime sweep over GHZ sizes");
  b->add_option("--sample", bench.sample, "registry sample name");
  b->add_option("--config", bench.config, "run configuration JSON");
  b->add_option("--sizes", bench.sizes, "system sizes")->delimiter(',');
  b->add_option("--seeds", bench.seeds, "seeds per size");
  b->add_option("--algorithms", bench.algorithms, "grape,igrape")->delimiter(',');
  b->add_option("--out", bench.out, "CSV output path");

  EntropyArgs ent;
  auto* e = app.add_subcommand("entropy", "entanglement and runtime of random circuit states by depth");
  e->add_option("--sample", ent.sample, "registry sample name");
  e->add_option("--config", ent.config, "run configuration JSON");
  e->add_option("--qubits", ent.qubits, "number of qubits");
  e->add_option("--layers", ent.layers, "layer counts")->delimiter(',');
  e->add_option("--seeds", ent.seeds, "random circuits per layer count");
  e->add_flag("--no-timing", ent.no_timing, "skip the GRAPE/iGRAPE runs");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "re-simulate a bundle and check its fidelity");
  v->add_option("--bundle", ver.bundle, "bundle directory")->required();
  v->add_option("--target-file", ver.target_file, "compare against this target instead");

  auto* s = app.add_subcommand("samples", "list the built-in samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitError;
  }

  try {
    if (o->parsed()) {
      if (opt.sample.empty() && opt.sample_file.empty()) {
        std::cerr << "error: --sample is required (or --sample-file)\n";
        return kExitError;
      }
      return cmd_optimize(opt);
    }
    if (b->parsed()) return cmd_benchmark(bench);
    if (e->parsed()) return cmd_entropy(ent);
    if (v->parsed()) return cmd_verify(ver);
    if (s->parsed()) return cmd_samples();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
