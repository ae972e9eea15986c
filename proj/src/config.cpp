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

#include "qoc/config.hpp"

#include <cstdio>
#include <fstream>

namespace qoc {

namespace {

// Budgets: GRAPE segment totals and iGRAPE per-Step segments. The final
// single-qubit layer is an ideal rotation and needs no segments. NMR sizes
// 3 and above carry Step budgets long enough for the slowest coupling in the
// reduced problem to entangle or disentangle its pair.
constexpr const char* kDefaultConfig = R"json({
  "tolerance": 0.003,
  "max_iterations": 1000,
  "memory": 10,
  "optimizer": "lbfgs",
  "learning_rate": 0.1,
  "max_retries": 5,
  "threads": 0,
  "frame": "zero-offsets",
  "initial_fraction": 0.1,
  "amplitude_bound": 0,
  "strategy": "balanced-bisection",
  "seed": 0,
  "nmr": {
    "dt": 5e-6,
    "sizes": {
      "2": {"grape_segments": 600,  "igrape_budgets": [500]},
      "3": {"grape_segments": 1000, "igrape_budgets": [800, 700]},
      "4": {"grape_segments": 1760, "igrape_budgets": [1500, 400]},
      "5": {"grape_segments": 2400, "igrape_budgets": [2000, 600, 400]},
      "7": {"grape_segments": 3000, "igrape_budgets": [2800, 1200, 600]}
    }
  },
  "sc": {
    "dt": 0.05,
    "sizes": {
      "2": {"grape_segments": 620,  "igrape_budgets": [320]},
      "3": {"grape_segments": 810,  "igrape_budgets": [380, 320]},
      "4": {"grape_segments": 1000, "igrape_budgets": [380, 320]},
      "5": {"grape_segments": 1200, "igrape_budgets": [420, 360, 320]},
      "6": {"grape_segments": 1400, "igrape_budgets": [420, 360, 320]}
    }
  },
  "sizes": [2, 3, 4],
  "seeds": 20,
  "algorithms": ["grape", "igrape"],
  "run_threads": 1
})json";

template <typename T>
void take(const nlohmann::json& j, const char* key, T& field) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) field = it->get<T>();
}

void overlay(const nlohmann::json& j, PlatformSettings& p) {
  take(j, "dt", p.dt);
  if (auto it = j.find("sizes"); it != j.end()) {
    for (const auto& [key, v] : it->items()) {
      const int size = std::stoi(key);
      SizeBudget& b = p.sizes[size];
      take(v, "grape_segments", b.grape_segments);
      take(v, "igrape_budgets", b.igrape_budgets);
    }
  }
}

nlohmann::json platform_json(const PlatformSettings& p) {
  nlohmann::json j = {{"dt", p.dt}, {"sizes", nlohmann::json::object()}};
  for (const auto& [size, b] : p.sizes)
    j["sizes"][std::to_string(size)] = {{"grape_segments", b.grape_segments}, {"igrape_budgets", b.igrape_budgets}};
  return j;
}

void apply_overrides(const nlohmann::json& j, RunConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("config document must be a JSON object");
  take(j, "tolerance", c.tolerance);
  take(j, "max_iterations", c.max_iterations);
  take(j, "memory", c.memory);
  take(j, "optimizer", c.optimizer);
  take(j, "learning_rate", c.learning_rate);
  take(j, "max_retries", c.max_retries);
  take(j, "threads", c.threads);
  take(j, "frame", c.frame);
  take(j, "initial_fraction", c.initial_fraction);
  take(j, "amplitude_bound", c.amplitude_bound);
  take(j, "strategy", c.strategy);
  take(j, "seed", c.seed);
  take(j, "sizes", c.sizes);
  take(j, "seeds", c.seeds);
  take(j, "algorithms", c.algorithms);
  take(j, "run_threads", c.run_threads);
  if (auto it = j.find("explicit_splits"); it != j.end()) {
    c.explicit_splits.clear();
    for (const auto& step : *it) {
      std::vector<ExplicitSplit> layer;
      for (const auto& s : step) layer.push_back({s.at("left").get<SiteSet>(), s.at("right").get<SiteSet>()});
      c.explicit_splits.push_back(std::move(layer));
    }
  }
  if (auto it = j.find("nmr"); it != j.end()) overlay(*it, c.nmr);
  if (auto it = j.find("sc"); it != j.end()) overlay(*it, c.sc);
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  apply_overrides(nlohmann::json::parse(kDefaultConfig), c);
  return c;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c = defaults();
  apply_overrides(j, c);
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"tolerance", tolerance},
                      {"max_iterations", max_iterations},
                      {"memory", memory},
                      {"optimizer", optimizer},
                      {"learning_rate", learning_rate},
                      {"max_retries", max_retries},
                      {"threads", threads},
                      {"frame", frame},
                      {"initial_fraction", initial_fraction},
                      {"amplitude_bound", amplitude_bound},
                      {"strategy", strategy},
                      {"seed", seed},
                      {"nmr", platform_json(nmr)},
                      {"sc", platform_json(sc)},
                      {"sizes", sizes},
                      {"seeds", seeds},
                      {"algorithms", algorithms},
                      {"run_threads", run_threads}};
  if (!explicit_splits.empty()) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& layer : explicit_splits) {
      nlohmann::json l = nlohmann::json::array();
      for (const auto& s : layer) l.push_back({{"left", s.left}, {"right", s.right}});
      steps.push_back(l);
    }
    j["explicit_splits"] = steps;
  }
  return j;
}

void RunConfig::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw std::invalid_argument("config: tolerance must be in (0, 1)");
  if (max_iterations < 0) throw std::invalid_argument("config: max_iterations must be non-negative");
  if (max_retries < 0) throw std::invalid_argument("config: max_retries must be non-negative");
  if (seeds < 1) throw std::invalid_argument("config: seeds must be at least 1");
  if (frame != "zero-offsets" && frame != "sample")
    throw std::invalid_argument("config: frame must be 'zero-offsets' or 'sample'");
  if (!(initial_fraction >= 0.0 && initial_fraction <= 1.0))
    throw std::invalid_argument("config: initial_fraction must be in [0, 1]");
  for (const auto& a : algorithms)
    if (a != "grape" && a != "igrape") throw std::invalid_argument("config: unknown algorithm '" + a + "'");
  parse_optimizer_method(optimizer);
  parse_partition_strategy(strategy);
  optimizer_config().validate(0);
}

int RunConfig::thread_count() const { return threads > 0 ? threads : default_thread_count(); }

OptimizerConfig RunConfig::optimizer_config() const {
  OptimizerConfig o;
  o.method = parse_optimizer_method(optimizer);
  o.tolerance = tolerance;
  o.max_iterations = max_iterations;
  o.memory = memory;
  o.learning_rate = learning_rate;
  return o;
}

const PlatformSettings& RunConfig::platform(Platform p) const { return p == Platform::Nmr ? nmr : sc; }

const SizeBudget& RunConfig::budget(Platform p, int size) const {
  const auto& sizes_ = platform(p).sizes;
  const auto it = sizes_.find(size);
  if (it == sizes_.end())
    throw std::invalid_argument(std::string("config has no ") + platform_name(p) + " budget for " +
                                std::to_string(size) + " qubits");
  return it->second;
}

PartitionPlan RunConfig::partition_plan(Platform p, int size) const {
  PartitionPlan plan;
  plan.strategy = parse_partition_strategy(strategy);
  plan.dt = platform(p).dt;
  plan.splits = explicit_splits;
  if (size > 1) plan.budgets = budget(p, size).igrape_budgets;
  return plan;
}

IGrapeConfig RunConfig::igrape_config(std::uint64_t run_seed) const {
  IGrapeConfig c;
  c.optimizer = optimizer_config();
  c.amplitude_bound = amplitude_bound;
  c.seed = run_seed;
  c.max_retries = max_retries;
  c.threads = thread_count();
  c.initial_fraction = initial_fraction;
  return c;
}

std::string config_hash(const nlohmann::json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Sample prepare_sample(const Sample& sample, int qubits, const std::string& frame) {
  const int n = sample_size(sample);
  if (qubits > n)
    throw std::invalid_argument("sample '" + sample_name(sample) + "' has only " + std::to_string(n) + " sites");
  Sample s = sample;
  if (qubits > 0 && qubits < n) {
    SiteSet first(static_cast<std::size_t>(qubits));
    for (int i = 0; i < qubits; ++i) first[static_cast<std::size_t>(i)] = i;
    s = sample_subset(sample, first);
  }
  if (frame == "zero-offsets") {
    if (auto* nmr = std::get_if<NmrSample>(&s)) s = nmr->with_uniform_offsets(0.0);
    else s = std::get<ScSample>(s).with_uniform_frequency(0.0);
  } else if (frame != "sample") {
    throw std::invalid_argument("unknown frame '" + frame + "'");
  }
  return s;
}

}  // namespace qoc
