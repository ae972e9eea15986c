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

#ifndef QOC_IGRAPE_HPP
#define QOC_IGRAPE_HPP

#include "qoc/grape.hpp"
#include "qoc/program.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qoc {

// --- partition planning ------------------------------------------------------

/// Disentangle: make the state a product across left|right (cost Lt).
/// FreezeRight: drive the right block to |0...0> (cost Lf); only the left
/// block is split further.
enum class SplitMode { Disentangle, FreezeRight };

const char* split_mode_name(SplitMode m);
SplitMode parse_split_mode(const std::string& s);

enum class PartitionStrategy { BalancedBisection, SpeciesSplit, Explicit };

const char* partition_strategy_name(PartitionStrategy s);
PartitionStrategy parse_partition_strategy(const std::string& s);

struct Subproblem {
  SiteSet sites;
  SiteSet left;
  SiteSet right;
  SplitMode mode = SplitMode::Disentangle;
  int parent = -1;  // index into the previous Step's subproblems; -1 for the root
};

struct PartitionStep {
  std::vector<Subproblem> subproblems;
  int segments = 0;
  double dt = 0.0;
};

/// Steps in optimization order. Blocks that end as single sites are closed by
/// local rotations; frozen blocks stay in |0...0>.
struct PartitionTree {
  int num_sites = 0;
  Platform platform = Platform::Nmr;
  std::vector<PartitionStep> steps;

  int num_subproblems() const;
  std::vector<int> budgets() const;
  /// Structural checks against the sample; throws std::invalid_argument.
  void validate(const Sample& sample) const;
};

struct ExplicitSplit {
  SiteSet left;
  SiteSet right;
};

struct PartitionPlan {
  PartitionStrategy strategy = PartitionStrategy::BalancedBisection;
  std::vector<int> budgets;  // one per Step
  double dt = 0.0;
  std::vector<std::vector<ExplicitSplit>> splits;  // Explicit only, one list per Step
};

/// Superconducting samples get disentangling splits of every block;
/// NMR samples get freeze-right splits of the remaining active block.
/// Throws std::invalid_argument when the budget count differs from the number
/// of Steps the strategy produces.
PartitionTree plan_partitions(const Sample& sample, const PartitionPlan& plan);

nlohmann::json partition_tree_to_json(const PartitionTree& tree);
PartitionTree partition_tree_from_json(const nlohmann::json& j);

// --- Steps ---------------------------------------------------------------------

struct IGrapeConfig {
  OptimizerConfig optimizer;       // tolerance = total infidelity budget
  double amplitude_bound = 0.0;    // <= 0: platform default
  std::uint64_t seed = 0;
  int max_retries = 5;
  int threads = 1;
  double initial_fraction = 0.1;
  bool split_tolerance = true;     // each subproblem gets tolerance / #subproblems
};

struct StepResult {
  int step = 0;
  int index = 0;
  Subproblem subproblem;
  PulseSequence pulses;            // reversed sign, local channels
  StateVector parent;
  StateVector left;                // child states on the local site order
  StateVector right;
  double parent_cost = 0.0;        // cost of the untouched parent state
  double residual = 1.0;
  OptimizationReport report;       // last attempt
  bool accepted = false;
  int attempts = 0;
  int iterations = 0;              // summed over attempts
  double wall_time_s = 0.0;        // summed over attempts
  std::uint64_t seed = 0;          // seed of the last attempt
};

/// Optimizes one subproblem with up to 1 + max_retries seeds; attempt r
/// starts from initial_fraction * 2^r of the box (capped at the full box).
StepResult run_step(const Sample& sample, const SiteSet& frozen, const StateVector& parent, const Subproblem& sub,
                    const PartitionStep& step, const IGrapeConfig& config, double tolerance,
                    std::uint64_t seed);

/// U with rows (a*, b*) and (-b, a), so U (a|0> + b|1>) = |0>.
Matrix closure_rotation(const StateVector& qubit);

struct Closure {
  int site = 0;
  StateVector state;
  Matrix rotation;
};

struct IGrapeResult {
  PartitionTree tree;
  std::vector<std::vector<StepResult>> steps;
  std::vector<Closure> closures;
  Program program;
  double fidelity = 0.0;
  bool converged = false;
  double subproblem_tolerance = 0.0;
  double wall_time_s = 0.0;        // sum over all subproblem optimizations
  double critical_path_s = 0.0;    // sum over Steps of the slowest subproblem
  int iterations = 0;
};

/// Time-ordered physical program: closure inverses, then Step l ... Step 1
/// pulses segment-reversed with forward sign. ContractError if any Step
/// result was not accepted.
Program assemble(const Sample& sample, const PartitionTree& tree, const std::vector<std::vector<StepResult>>& steps,
                 const std::vector<Closure>& closures, double amplitude_bound = 0.0);

/// Coupling mask used while Step `step` plays: a chain boundary is on only
/// when both neighbours belong to the same subproblem.
std::vector<bool> step_coupling_mask(const PartitionTree& tree, int step);

IGrapeResult run_igrape(const Sample& sample, const StateVector& target, const PartitionTree& tree,
                        const IGrapeConfig& config);

// --- scheduling ------------------------------------------------------------------

/// Calls fn(0..n-1) on up to `threads` workers; rethrows the exception of the
/// lowest failing index.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// QOC_THREADS if set, otherwise the hardware concurrency (at least 1).
int default_thread_count();

/// Deterministic child seed (splitmix64 over the parts).
std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

/// Channel labels of the full-system model of `sample`, without building it.
std::vector<std::string> full_channel_labels(const Sample& sample);

}  // namespace qoc

#endif  // QOC_IGRAPE_HPP
