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

#include "qoc/benchmark.hpp"

#include "qoc/pulse_io.hpp"
#include "qoc/target_states.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qoc {

Program grape_program(const Sample& sample, const GrapeResult& result) {
  Program p;
  p.num_sites = sample_size(sample);
  p.platform = platform_of(sample);
  ProgramBlock b;
  b.kind = ProgramBlock::Kind::Pulses;
  b.label = "grape";
  b.pulses = result.pulses;
  if (p.platform == Platform::Superconducting)
    b.coupling_mask.assign(static_cast<std::size_t>(std::max(0, p.num_sites - 1)), true);
  p.blocks.push_back(std::move(b));
  return p;
}

RunOutcome run_algorithm(const std::string& algorithm, const Sample& sample, const StateVector& target,
                         const RunConfig& config, std::uint64_t seed) {
  const Platform platform = platform_of(sample);
  const int n = sample_size(sample);
  if (target.num_sites() != n) throw std::invalid_argument("target and sample have different site counts");
  RunOutcome out;
  out.algorithm = algorithm;
  if (algorithm == "grape") {
    GrapeProblem pb;
    pb.model = full_model(sample);
    pb.target = target;
    pb.grid = {config.platform(platform).dt, config.budget(platform, n).grape_segments};
    pb.optimizer = config.optimizer_config();
    if (config.amplitude_bound > 0.0) {
      pb.lower = uniform_bounds(pb.model.num_controls(), -config.amplitude_bound);
      pb.upper = uniform_bounds(pb.model.num_controls(), config.amplitude_bound);
    }
    pb.seed = seed;
    pb.initial_fraction = config.initial_fraction;
    GrapeResult r = run_grape(pb);
    out.program = grape_program(sample, r);
    out.converged = r.converged;
    out.fidelity = r.fidelity;
    out.wall_time_s = out.critical_path_s = r.report.wall_time_s;
    out.iterations = r.report.iterations;
    out.grape = std::move(r);
    return out;
  }
  if (algorithm == "igrape") {
    const PartitionTree tree = plan_partitions(sample, config.partition_plan(platform, n));
    IGrapeResult r = run_igrape(sample, target, tree, config.igrape_config(seed));
    out.program = r.program;
    out.converged = r.converged;
    out.fidelity = r.fidelity;
    out.wall_time_s = r.wall_time_s;
    out.critical_path_s = r.critical_path_s;
    out.iterations = r.iterations;
    out.igrape = std::move(r);
    return out;
  }
  throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
}

std::vector<BenchmarkRecord> run_benchmark(const Sample& sample, const RunConfig& config,
                                           const std::function<void(const BenchmarkRecord&)>& progress) {
  config.validate();
  const std::string hash = config_hash(config.to_json());
  struct Job {
    int size;
    std::string algorithm;
    int seed;
  };
  std::vector<Job> jobs;
  for (int size : config.sizes)
    for (const auto& alg : config.algorithms)
      for (int s = 0; s < config.seeds; ++s) jobs.push_back({size, alg, s});

  std::vector<BenchmarkRecord> records(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), config.run_threads, [&](int i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    BenchmarkRecord& rec = records[static_cast<std::size_t>(i)];
    rec.size = job.size;
    rec.algorithm = job.algorithm;
    rec.seed = job.seed;
    rec.config_hash = hash;
    try {
      const Sample s = prepare_sample(sample, job.size, config.frame);
      const std::uint64_t seed =
          mix_seed(config.seed, {static_cast<std::uint64_t>(job.size), static_cast<std::uint64_t>(job.seed)});
      const RunOutcome r = run_algorithm(job.algorithm, s, ghz(job.size), config, seed);
      rec.wall_time_s = r.wall_time_s;
      rec.critical_path_s = r.critical_path_s;
      rec.iterations = r.iterations;
      rec.fidelity = r.fidelity;
      rec.converged = r.converged;
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.converged = false;
    }
    if (progress) progress(rec);
  });
  return records;
}

const char* const kBenchmarkCsvHeader =
    "size,algorithm,seed,wall_time_s,critical_path_s,iterations,fidelity,converged,config_hash,error";

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
  out << kBenchmarkCsvHeader << '\n';
  for (const auto& r : records)
    out << r.size << ',' << r.algorithm << ',' << r.seed << ',' << format_double(r.wall_time_s) << ','
        << format_double(r.critical_path_s) << ',' << r.iterations << ',' << format_double(r.fidelity) << ','
        << (r.converged ? 1 : 0) << ',' << r.config_hash << ',' << csv_field(r.error) << '\n';
}

std::vector<BenchmarkRecord> read_benchmark_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchmarkCsvHeader)
    throw std::invalid_argument("benchmark CSV: unexpected header");
  std::vector<BenchmarkRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) throw std::invalid_argument("benchmark CSV: expected 10 fields");
    BenchmarkRecord r;
    r.size = std::stoi(f[0]);
    r.algorithm = f[1];
    r.seed = std::stoi(f[2]);
    r.wall_time_s = parse_double(f[3]);
    r.critical_path_s = parse_double(f[4]);
    r.iterations = std::stoi(f[5]);
    r.fidelity = parse_double(f[6]);
    r.converged = f[7] == "1";
    r.config_hash = f[8];
    r.error = f[9];
    out.push_back(std::move(r));
  }
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope needs distinct x values");
  return sxy / sxx;
}

std::map<std::string, AlgorithmSummary> summarize(const std::vector<BenchmarkRecord>& records) {
  std::map<std::string, AlgorithmSummary> out;
  for (const auto& r : records) {
    auto& s = out[r.algorithm];
    s.runs[r.size] += 1;
    s.converged[r.size] += r.converged ? 1 : 0;
    s.mean_wall_time_s[r.size] += r.wall_time_s;
  }
  for (auto& [alg, s] : out) {
    std::vector<double> x, y;
    for (auto& [size, t] : s.mean_wall_time_s) {
      t /= s.runs[size];
      if (t > 0.0) {
        x.push_back(size);
        y.push_back(std::log2(t));
      }
    }
    s.log2_slope = x.size() >= 2 ? fit_slope(x, y) : 0.0;
  }
  return out;
}

void write_summary(std::ostream& out, const std::map<std::string, AlgorithmSummary>& summary) {
  out << "algorithm,size,runs,converged,mean_wall_time_s\n";
  for (const auto& [alg, s] : summary)
    for (const auto& [size, t] : s.mean_wall_time_s)
      out << alg << ',' << size << ',' << s.runs.at(size) << ',' << s.converged.at(size) << ',' << format_double(t)
          << '\n';
  out << "algorithm,log2_runtime_slope\n";
  for (const auto& [alg, s] : summary) out << alg << ',' << format_double(s.log2_slope) << '\n';
}

std::vector<EntropyRow> run_entropy(const Sample& sample, int qubits, const std::vector<int>& layers, int seeds,
                                    const RunConfig& config, bool time_optimizers) {
  if (seeds < 1) throw std::invalid_argument("entropy: seeds must be at least 1");
  if (qubits < 2) throw std::invalid_argument("entropy: need at least two qubits");
  if (layers.empty()) throw std::invalid_argument("entropy: no layer counts given");
  SiteSet keep(static_cast<std::size_t>(qubits / 2));
  for (int i = 0; i < qubits / 2; ++i) keep[static_cast<std::size_t>(i)] = i;
  const Sample s = time_optimizers ? prepare_sample(sample, qubits, config.frame) : Sample{};
  std::vector<EntropyRow> rows;
  for (int d : layers) {
    if (d < 1) throw std::invalid_argument("entropy: layer counts must be positive");
    EntropyRow row;
    row.layers = d;
    row.seeds = seeds;
    for (int k = 0; k < seeds; ++k) {
      const std::uint64_t seed =
          mix_seed(config.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k)});
      const StateVector psi = pqc_state(PqcSpec::random(qubits, d, seed));
      row.mean_entropy += entanglement_profile(psi, keep).entropy / seeds;
      if (time_optimizers) {
        row.grape_mean_s += run_algorithm("grape", s, psi, config, seed).wall_time_s / seeds;
        row.igrape_mean_s += run_algorithm("igrape", s, psi, config, seed).wall_time_s / seeds;
      }
    }
    row.ratio = row.igrape_mean_s > 0.0 ? row.grape_mean_s / row.igrape_mean_s : 0.0;
    rows.push_back(row);
  }
  return rows;
}

void write_entropy_table(std::ostream& out, const std::vector<EntropyRow>& rows) {
  out << "layers,seeds,mean_entropy_bits,grape_mean_s,igrape_mean_s,runtime_ratio\n";
  for (const auto& r : rows)
    out << r.layers << ',' << r.seeds << ',' << format_double(r.mean_entropy) << ',' << format_double(r.grape_mean_s)
        << ',' << format_double(r.igrape_mean_s) << ',' << format_double(r.ratio) << '\n';
}

}  // namespace qoc
