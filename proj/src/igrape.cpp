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

#include "qoc/igrape.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace qoc {

const char* split_mode_name(SplitMode m) { return m == SplitMode::Disentangle ? "disentangle" : "freeze-right"; }

SplitMode parse_split_mode(const std::string& s) {
  if (s == "disentangle") return SplitMode::Disentangle;
  if (s == "freeze-right") return SplitMode::FreezeRight;
  throw std::invalid_argument("unknown split mode '" + s + "'");
}

const char* partition_strategy_name(PartitionStrategy s) {
  switch (s) {
    case PartitionStrategy::BalancedBisection: return "balanced-bisection";
    case PartitionStrategy::SpeciesSplit: return "species-split";
    case PartitionStrategy::Explicit: return "explicit";
  }
  return "?";
}

PartitionStrategy parse_partition_strategy(const std::string& s) {
  if (s == "balanced-bisection") return PartitionStrategy::BalancedBisection;
  if (s == "species-split") return PartitionStrategy::SpeciesSplit;
  if (s == "explicit") return PartitionStrategy::Explicit;
  throw std::invalid_argument("unknown partition strategy '" + s + "'");
}

int PartitionTree::num_subproblems() const {
  int n = 0;
  for (const auto& s : steps) n += static_cast<int>(s.subproblems.size());
  return n;
}

std::vector<int> PartitionTree::budgets() const {
  std::vector<int> out;
  for (const auto& s : steps) out.push_back(s.segments);
  return out;
}

namespace {

std::string show(const SiteSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

SiteSet merged(const SiteSet& a, const SiteSet& b) {
  SiteSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

SiteSet local_positions(const SiteSet& sites, const SiteSet& subset) {
  SiteSet out;
  for (int s : subset) {
    const auto it = std::lower_bound(sites.begin(), sites.end(), s);
    out.push_back(static_cast<int>(it - sites.begin()));
  }
  return out;
}

}  // namespace

void PartitionTree::validate(const Sample& sample) const {
  if (num_sites != sample_size(sample)) throw std::invalid_argument("partition tree site count differs from the sample");
  if (platform != platform_of(sample)) throw std::invalid_argument("partition tree platform differs from the sample");
  SiteSet all(static_cast<std::size_t>(num_sites));
  for (int i = 0; i < num_sites; ++i) all[static_cast<std::size_t>(i)] = i;
  std::vector<SiteSet> live;
  if (num_sites > 1) live.push_back(all);
  std::vector<Subproblem> previous;
  for (std::size_t l = 0; l < steps.size(); ++l) {
    const PartitionStep& step = steps[l];
    const std::string where = "Step " + std::to_string(l + 1) + ": ";
    if (step.segments < 1) throw std::invalid_argument(where + "segment budget must be positive");
    if (!(step.dt > 0.0)) throw std::invalid_argument(where + "dt must be positive");
    if (step.subproblems.empty()) throw std::invalid_argument(where + "no subproblems");
    std::vector<SiteSet> next;
    for (const auto& sub : step.subproblems) {
      const auto it = std::find(live.begin(), live.end(), sub.sites);
      if (it == live.end()) throw std::invalid_argument(where + "block " + show(sub.sites) + " is not a live state");
      live.erase(it);
      if (sub.left.empty() || sub.right.empty()) throw std::invalid_argument(where + "empty side in split of " + show(sub.sites));
      if (normalize_sites(sub.left, num_sites) != sub.left || normalize_sites(sub.right, num_sites) != sub.right)
        throw std::invalid_argument(where + "split sides must be sorted and unique");
      if (merged(sub.left, sub.right) != sub.sites)
        throw std::invalid_argument(where + "split of " + show(sub.sites) + " is not a partition");
      if (platform == Platform::Nmr && sub.mode != SplitMode::FreezeRight)
        throw std::invalid_argument(where + "NMR blocks are split in freeze-right mode");
      if (platform == Platform::Superconducting && sub.mode != SplitMode::Disentangle)
        throw std::invalid_argument(where + "freeze-right needs always-on couplings (NMR only)");
      if (l == 0 ? sub.parent != -1
                 : (sub.parent < 0 || sub.parent >= static_cast<int>(previous.size()) ||
                    (previous[static_cast<std::size_t>(sub.parent)].left != sub.sites &&
                     previous[static_cast<std::size_t>(sub.parent)].right != sub.sites)))
        throw std::invalid_argument(where + "wrong parent index for " + show(sub.sites));
      if (sub.left.size() > 1) next.push_back(sub.left);
      if (sub.mode == SplitMode::Disentangle && sub.right.size() > 1) next.push_back(sub.right);
    }
    live.insert(live.end(), next.begin(), next.end());
    previous = step.subproblems;
  }
  if (!live.empty()) throw std::invalid_argument("partition tree leaves block " + show(live.front()) + " unsplit");
}

PartitionTree plan_partitions(const Sample& sample, const PartitionPlan& plan) {
  PartitionTree tree;
  tree.num_sites = sample_size(sample);
  tree.platform = platform_of(sample);
  const SplitMode mode = tree.platform == Platform::Nmr ? SplitMode::FreezeRight : SplitMode::Disentangle;
  const int n = tree.num_sites;

  auto bisect = [](const SiteSet& s) {
    const std::size_t half = (s.size() + 1) / 2;
    return ExplicitSplit{SiteSet(s.begin(), s.begin() + static_cast<long>(half)),
                         SiteSet(s.begin() + static_cast<long>(half), s.end())};
  };
  auto species_split = [&](const SiteSet& s) {
    const auto* nmr = std::get_if<NmrSample>(&sample);
    if (!nmr) return bisect(s);
    const std::string last = nmr->species(s.back());
    ExplicitSplit out;
    for (int i : s) (nmr->species(i) == last ? out.right : out.left).push_back(i);
    if (out.left.empty()) return bisect(s);
    return out;
  };

  std::vector<std::vector<ExplicitSplit>> splits;
  if (plan.strategy == PartitionStrategy::Explicit) {
    splits = plan.splits;
  } else {
    std::vector<SiteSet> live;
    if (n > 1) {
      SiteSet all(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
      live.push_back(all);
    }
    bool first = true;
    while (!live.empty()) {
      std::vector<ExplicitSplit> layer;
      std::vector<SiteSet> next;
      for (const auto& s : live) {
        ExplicitSplit sp = first && plan.strategy == PartitionStrategy::SpeciesSplit ? species_split(s) : bisect(s);
        if (sp.left.size() > 1) next.push_back(sp.left);
        if (mode == SplitMode::Disentangle && sp.right.size() > 1) next.push_back(sp.right);
        layer.push_back(std::move(sp));
      }
      splits.push_back(std::move(layer));
      live = std::move(next);
      first = false;
    }
  }
  if (plan.budgets.size() != splits.size())
    throw std::invalid_argument("partition plan has " + std::to_string(plan.budgets.size()) +
                                " segment budgets but the tree has " + std::to_string(splits.size()) + " Steps");

  std::vector<Subproblem> previous;
  for (std::size_t l = 0; l < splits.size(); ++l) {
    PartitionStep step;
    step.segments = plan.budgets[l];
    step.dt = plan.dt;
    for (const auto& sp : splits[l]) {
      Subproblem sub;
      sub.left = normalize_sites(sp.left, n);
      sub.right = normalize_sites(sp.right, n);
      sub.sites = merged(sub.left, sub.right);
      sub.mode = mode;
      for (std::size_t p = 0; p < previous.size(); ++p)
        if (previous[p].left == sub.sites || previous[p].right == sub.sites) sub.parent = static_cast<int>(p);
      step.subproblems.push_back(std::move(sub));
    }
    previous = step.subproblems;
    tree.steps.push_back(std::move(step));
  }
  tree.validate(sample);
  return tree;
}

nlohmann::json partition_tree_to_json(const PartitionTree& tree) {
  nlohmann::json j;
  j["num_sites"] = tree.num_sites;
  j["platform"] = platform_name(tree.platform);
  j["steps"] = nlohmann::json::array();
  for (const auto& step : tree.steps) {
    nlohmann::json s = {{"segments", step.segments}, {"dt", step.dt}, {"subproblems", nlohmann::json::array()}};
    for (const auto& sub : step.subproblems)
      s["subproblems"].push_back({{"sites", sub.sites},
                                  {"left", sub.left},
                                  {"right", sub.right},
                                  {"mode", split_mode_name(sub.mode)},
                                  {"parent", sub.parent}});
    j["steps"].push_back(s);
  }
  return j;
}

PartitionTree partition_tree_from_json(const nlohmann::json& j) {
  PartitionTree tree;
  tree.num_sites = j.at("num_sites").get<int>();
  tree.platform = parse_platform(j.at("platform").get<std::string>());
  for (const auto& s : j.at("steps")) {
    PartitionStep step;
    step.segments = s.at("segments").get<int>();
    step.dt = s.at("dt").get<double>();
    for (const auto& sub : s.at("subproblems"))
      step.subproblems.push_back({sub.at("sites").get<SiteSet>(), sub.at("left").get<SiteSet>(),
                                  sub.at("right").get<SiteSet>(), parse_split_mode(sub.at("mode").get<std::string>()),
                                  sub.at("parent").get<int>()});
    tree.steps.push_back(std::move(step));
  }
  return tree;
}

// --- scheduling --------------------------------------------------------------------

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  threads = std::clamp(threads, 1, n);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int default_thread_count() {
  if (const char* env = std::getenv("QOC_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = splitmix(base);
  for (std::uint64_t p : parts) h = splitmix(h ^ splitmix(p));
  return h;
}

std::vector<std::string> full_channel_labels(const Sample& sample) {
  std::vector<std::string> out;
  auto add = [&](const std::string& l) {
    out.push_back(l + ".x");
    out.push_back(l + ".y");
  };
  if (const auto* nmr = std::get_if<NmrSample>(&sample))
    for (const auto& s : nmr->spins) add(s.label);
  else
    for (const auto& q : std::get<ScSample>(sample).qubits) add(q.label);
  return out;
}

// --- Steps ---------------------------------------------------------------------------

Matrix closure_rotation(const StateVector& q) {
  if (q.dim() != 2) throw std::invalid_argument("closure rotation needs a single two-level state");
  if (std::abs(q.norm() - 1.0) > 1e-10) throw std::invalid_argument("closure rotation needs a normalized state");
  const cplx a = q.amplitudes()(0), b = q.amplitudes()(1);
  Matrix u(2, 2);
  u << std::conj(a), std::conj(b), -b, a;
  return u;
}

StepResult run_step(const Sample& sample, const SiteSet& frozen, const StateVector& parent, const Subproblem& sub,
                    const PartitionStep& step, const IGrapeConfig& config, double tolerance, std::uint64_t seed) {
  const int nsub = static_cast<int>(sub.sites.size());
  if (parent.num_sites() != nsub) throw std::invalid_argument("parent state does not live on the subproblem's sites");

  PulseProblem pb;
  pb.model = subsystem_model(sample, sub.sites, frozen);
  pb.initial = parent;
  const SiteSet left = local_positions(sub.sites, sub.left);
  const SiteSet right = local_positions(sub.sites, sub.right);
  pb.cost = sub.mode == SplitMode::Disentangle ? CostSpec::purity(left) : CostSpec::freeze(right);
  pb.grid = {step.dt, step.segments};
  pb.sign = Sign::Reversed;
  const double bound = config.amplitude_bound > 0.0 ? config.amplitude_bound : default_amplitude_bound(pb.model.platform);
  pb.lower = uniform_bounds(pb.model.num_controls(), -bound);
  pb.upper = uniform_bounds(pb.model.num_controls(), bound);
  pb.optimizer = config.optimizer;
  pb.optimizer.tolerance = tolerance;

  StepResult r;
  r.subproblem = sub;
  r.parent = parent;
  r.parent_cost = cost_value(parent, pb.cost);
  PulseSolution sol;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    pb.seed = attempt == 0 ? seed : mix_seed(seed, {static_cast<std::uint64_t>(attempt)});
    // Small random starts can sit on a symmetric saddle (cost exactly at its
    // parent value); each retry doubles the start box.
    pb.initial_fraction = std::min(1.0, config.initial_fraction * std::ldexp(1.0, attempt));
    sol = optimize_pulses(pb);
    r.seed = pb.seed;
    r.attempts = attempt + 1;
    r.iterations += sol.report.iterations;
    r.wall_time_s += sol.report.wall_time_s;
    if (sol.converged) break;
  }
  r.pulses = std::move(sol.pulses);
  r.report = std::move(sol.report);
  r.residual = sol.cost;
  r.accepted = sol.converged;

  const std::vector<int>& dims = sol.final.site_dims();
  if (sub.mode == SplitMode::Disentangle) {
    SchmidtPair p = dominant_schmidt_pair(sol.final, left);
    r.left = std::move(p.left);
    r.right = std::move(p.right);
  } else {
    // rows of the (right, left) matrix: row 0 is <0|_right phi
    const Matrix m = bipartition_matrix(sol.final, right);
    Vector l = m.row(0).transpose();
    const double nrm = l.norm();
    if (nrm > 0.0) l /= nrm;
    else l = Vector::Unit(l.size(), 0);
    r.left = StateVector(std::move(l), dims_of(dims, left));
    r.right = StateVector::zero(dims_of(dims, right));
  }
  return r;
}

std::vector<bool> step_coupling_mask(const PartitionTree& tree, int step) {
  if (tree.platform == Platform::Nmr) return {};
  std::vector<int> owner(static_cast<std::size_t>(tree.num_sites), -1);
  const auto& subs = tree.steps.at(static_cast<std::size_t>(step)).subproblems;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (int s : subs[i].sites) owner[static_cast<std::size_t>(s)] = static_cast<int>(i);
  std::vector<bool> mask(static_cast<std::size_t>(std::max(0, tree.num_sites - 1)), false);
  for (std::size_t j = 0; j + 1 < owner.size(); ++j) mask[j] = owner[j] >= 0 && owner[j] == owner[j + 1];
  return mask;
}

Program assemble(const Sample& sample, const PartitionTree& tree, const std::vector<std::vector<StepResult>>& steps,
                 const std::vector<Closure>& closures, double amplitude_bound) {
  if (steps.size() != tree.steps.size()) throw ContractError("assemble: Step results do not match the tree");
  for (const auto& layer : steps)
    for (const auto& r : layer)
      if (!r.accepted)
        throw ContractError("assemble: Step " + std::to_string(r.step + 1) + " subproblem " + std::to_string(r.index) +
                            " was not accepted (residual " + std::to_string(r.residual) + ")");
  const int n = tree.num_sites;
  Program prog;
  prog.num_sites = n;
  prog.platform = tree.platform;

  ProgramBlock rot;
  rot.kind = ProgramBlock::Kind::Rotations;
  rot.label = "closure";
  rot.rotations.assign(static_cast<std::size_t>(n), Matrix::Identity(2, 2));
  for (const auto& c : closures) rot.rotations.at(static_cast<std::size_t>(c.site)) = c.rotation.adjoint();
  prog.blocks.push_back(std::move(rot));

  const std::vector<std::string> labels = full_channel_labels(sample);
  const int A = static_cast<int>(labels.size());
  const double bound = amplitude_bound > 0.0 ? amplitude_bound : default_amplitude_bound(tree.platform);
  for (int l = static_cast<int>(tree.steps.size()) - 1; l >= 0; --l) {
    const PartitionStep& step = tree.steps[static_cast<std::size_t>(l)];
    PulseSequence p;
    p.grid = {step.dt, step.segments};
    p.amplitudes = Eigen::MatrixXd::Zero(step.segments, A);
    p.labels = labels;
    p.sign = Sign::Reversed;
    p.lower = uniform_bounds(A, -bound);
    p.upper = uniform_bounds(A, bound);
    for (const auto& r : steps[static_cast<std::size_t>(l)]) {
      if (r.pulses.segments() != step.segments) throw ContractError("assemble: segment count mismatch");
      for (int c = 0; c < r.pulses.channels(); ++c) {
        const int site = r.subproblem.sites.at(static_cast<std::size_t>(c / 2));
        p.amplitudes.col(2 * site + c % 2) = r.pulses.amplitudes.col(c);
      }
    }
    ProgramBlock b;
    b.kind = ProgramBlock::Kind::Pulses;
    b.label = "step" + std::to_string(l + 1);
    b.pulses = p.inverted();
    b.coupling_mask = step_coupling_mask(tree, l);
    prog.blocks.push_back(std::move(b));
  }
  return prog;
}

IGrapeResult run_igrape(const Sample& sample, const StateVector& target_in, const PartitionTree& tree,
                        const IGrapeConfig& config) {
  tree.validate(sample);
  const int n = tree.num_sites;
  if (target_in.num_sites() != n) throw std::invalid_argument("target has the wrong number of sites");
  for (int d : target_in.site_dims())
    if (d != 2) throw std::invalid_argument("iGRAPE needs two-level sites");
  StateVector target = target_in;
  target.normalize();

  IGrapeResult out;
  out.tree = tree;
  const int nsub = tree.num_subproblems();
  out.subproblem_tolerance =
      config.split_tolerance ? config.optimizer.tolerance / std::max(1, nsub) : config.optimizer.tolerance;

  const StateVector zero = StateVector::zero(target.site_dims());
  if (overlap_probability(zero, target) > 1.0 - 1e-14) {
    out.program.num_sites = n;
    out.program.platform = tree.platform;
    out.fidelity = verify_program(out.program, sample, target);
    out.converged = true;
    return out;
  }

  std::map<SiteSet, StateVector> live;
  std::map<int, StateVector> leaves;
  SiteSet frozen;
  if (n == 1) leaves[0] = target;
  else {
    SiteSet all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    live[all] = target;
  }

  bool all_accepted = true;
  for (std::size_t l = 0; l < tree.steps.size(); ++l) {
    const PartitionStep& step = tree.steps[l];
    const int m = static_cast<int>(step.subproblems.size());
    std::vector<StepResult> results(static_cast<std::size_t>(m));
    parallel_for(m, config.threads, [&](int i) {
      const Subproblem& sub = step.subproblems[static_cast<std::size_t>(i)];
      const std::uint64_t seed = mix_seed(config.seed, {l, static_cast<std::uint64_t>(i)});
      StepResult r = run_step(sample, frozen, live.at(sub.sites), sub, step, config, out.subproblem_tolerance, seed);
      r.step = static_cast<int>(l);
      r.index = i;
      results[static_cast<std::size_t>(i)] = std::move(r);
    });

    double slowest = 0.0;
    for (const auto& r : results) {
      out.wall_time_s += r.wall_time_s;
      out.iterations += r.iterations;
      slowest = std::max(slowest, r.wall_time_s);
      all_accepted = all_accepted && r.accepted;
    }
    out.critical_path_s += slowest;

    // earlier leaves keep evolving under their local drift while this Step plays
    for (auto& [site, psi] : leaves) {
      const SystemModel local = subsystem_model(sample, {site});
      psi = StateVector(expm_hermitian(local.drift, step.dt * step.segments) * psi.amplitudes(), psi.site_dims());
    }
    for (const auto& r : results) {
      const Subproblem& sub = r.subproblem;
      live.erase(sub.sites);
      auto place = [&](const SiteSet& sites, const StateVector& psi) {
        if (sites.size() == 1) leaves[sites.front()] = psi;
        else live[sites] = psi;
      };
      place(sub.left, r.left);
      if (sub.mode == SplitMode::Disentangle) place(sub.right, r.right);
      else frozen = merged(frozen, sub.right);
    }
    out.steps.push_back(std::move(results));
    if (!all_accepted) break;
  }

  if (!all_accepted) {
    out.converged = false;
    out.fidelity = 0.0;
    return out;
  }
  for (const auto& [site, psi] : leaves) {
    StateVector q = psi;
    q.normalize();
    out.closures.push_back({site, q, closure_rotation(q)});
  }
  out.program = assemble(sample, tree, out.steps, out.closures, config.amplitude_bound);
  out.fidelity = verify_program(out.program, sample, target);
  out.converged = out.fidelity >= 1.0 - config.optimizer.tolerance;
  return out;
}

}  // namespace qoc
