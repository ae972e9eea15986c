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

#ifndef QOC_BENCHMARK_HPP
#define QOC_BENCHMARK_HPP

#include "qoc/config.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qoc {

/// Result of one optimization run with either algorithm, as a physical
/// program over the whole sample.
struct RunOutcome {
  std::string algorithm;
  bool converged = false;
  double fidelity = 0.0;
  double wall_time_s = 0.0;      // optimizer time (all subproblems for iGRAPE)
  double critical_path_s = 0.0;  // iGRAPE: slowest subproblem per Step, summed
  int iterations = 0;
  Program program;
  std::optional<GrapeResult> grape;
  std::optional<IGrapeResult> igrape;
};

/// `sample` must already be prepared (subset and frame applied).
RunOutcome run_algorithm(const std::string& algorithm, const Sample& sample, const StateVector& target,
                         const RunConfig& config, std::uint64_t seed);

/// Program for a GRAPE result: one forward pulse block with all couplings on.
Program grape_program(const Sample& sample, const GrapeResult& result);

struct BenchmarkRecord {
  int size = 0;
  std::string algorithm;
  int seed = 0;
  double wall_time_s = 0.0;
  double critical_path_s = 0.0;
  int iterations = 0;
  double fidelity = 0.0;
  bool converged = false;
  std::string config_hash;
  std::string error;  // non-empty for runs that threw
};

/// GHZ preparation on the first `size` sites of `sample` for every
/// (size, algorithm, seed index) of the config. Exceptions become failed rows.
std::vector<BenchmarkRecord> run_benchmark(const Sample& sample, const RunConfig& config,
                                           const std::function<void(const BenchmarkRecord&)>& progress = {});

extern const char* const kBenchmarkCsvHeader;
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);
std::vector<BenchmarkRecord> read_benchmark_csv(std::istream& in);

struct AlgorithmSummary {
  std::map<int, double> mean_wall_time_s;  // by size
  std::map<int, int> converged;            // by size
  std::map<int, int> runs;
  double log2_slope = 0.0;                 // least-squares slope of log2(mean time) vs size
};

std::map<std::string, AlgorithmSummary> summarize(const std::vector<BenchmarkRecord>& records);
void write_summary(std::ostream& out, const std::map<std::string, AlgorithmSummary>& summary);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct EntropyRow {
  int layers = 0;
  double mean_entropy = 0.0;  // bits, across the balanced cut
  double grape_mean_s = 0.0;
  double igrape_mean_s = 0.0;
  double ratio = 0.0;         // grape / igrape; 0 when timings were skipped
  int seeds = 0;
};

/// Entropy of random PQC states per layer count, optionally with GRAPE and
/// iGRAPE runtimes for preparing them. Throws std::invalid_argument for
/// zero seeds.
std::vector<EntropyRow> run_entropy(const Sample& sample, int qubits, const std::vector<int>& layers, int seeds,
                                    const RunConfig& config, bool time_optimizers);
void write_entropy_table(std::ostream& out, const std::vector<EntropyRow>& rows);

}  // namespace qoc

#endif  // QOC_BENCHMARK_HPP
