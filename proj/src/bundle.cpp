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

#include "qoc/bundle.hpp"

#include "qoc/pulse_io.hpp"
#include "qoc/sample_registry.hpp"
#include "qoc/target_states.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qoc {

namespace {

nlohmann::json report_json(const OptimizationReport& r) {
  return {{"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"wall_time_s", r.wall_time_s},
          {"termination", termination_name(r.reason)},
          {"cost_trace", r.cost_trace},
          {"gradient_norm_trace", r.gradient_norm_trace}};
}

std::string block_file(std::size_t i, const ProgramBlock& b) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "block_%02zu_", i);
  return buf + b.label + (b.kind == ProgramBlock::Kind::Pulses ? ".pulse" : ".rot");
}

void write_rotations(const std::filesystem::path& path, const std::vector<Matrix>& rots) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  for (std::size_t s = 0; s < rots.size(); ++s) {
    out << "site " << s << '\n';
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c)
        out << (c ? " " : "") << format_double(rots[s](r, c).real()) << ' ' << format_double(rots[s](r, c).imag());
      out << '\n';
    }
  }
}

std::vector<Matrix> read_rotations(const std::filesystem::path& path, int sites) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::vector<Matrix> out;
  std::string word;
  for (int s = 0; s < sites; ++s) {
    int idx = -1;
    if (!(in >> word >> idx) || word != "site" || idx != s)
      throw std::invalid_argument(path.string() + ": expected 'site " + std::to_string(s) + "'");
    Matrix m(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        std::string re, im;
        if (!(in >> re >> im)) throw std::invalid_argument(path.string() + ": truncated rotation");
        m(r, c) = cplx(parse_double(re), parse_double(im));
      }
    out.push_back(std::move(m));
  }
  if (in >> word) throw std::invalid_argument(path.string() + ": trailing content");
  return out;
}

}  // namespace

Bundle make_bundle(const RunOutcome& outcome, const Sample& sample, const StateVector& target,
                   const RunConfig& config, std::uint64_t seed) {
  Bundle b;
  b.algorithm = outcome.algorithm;
  b.sample = sample;
  b.target = target;
  b.program = outcome.program;
  b.fidelity = outcome.fidelity;
  b.tolerance = config.tolerance;
  b.converged = outcome.converged;
  b.seed = seed;
  b.config = config.to_json();
  b.config_hash = config_hash(b.config);
  b.extra = {{"wall_time_s", outcome.wall_time_s},
             {"critical_path_s", outcome.critical_path_s},
             {"iterations", outcome.iterations}};
  if (outcome.grape) b.extra["report"] = report_json(outcome.grape->report);
  if (outcome.igrape) {
    const IGrapeResult& r = *outcome.igrape;
    b.extra["tree"] = partition_tree_to_json(r.tree);
    b.extra["subproblem_tolerance"] = r.subproblem_tolerance;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& layer : r.steps)
      for (const auto& s : layer)
        steps.push_back({{"step", s.step + 1},
                         {"index", s.index},
                         {"sites", s.subproblem.sites},
                         {"mode", split_mode_name(s.subproblem.mode)},
                         {"parent_cost", s.parent_cost},
                         {"residual", s.residual},
                         {"accepted", s.accepted},
                         {"attempts", s.attempts},
                         {"seed", s.seed},
                         {"report", report_json(s.report)}});
    b.extra["steps"] = steps;
    nlohmann::json closures = nlohmann::json::array();
    for (const auto& c : r.closures) closures.push_back(c.site);
    b.extra["closure_sites"] = closures;
  }
  return b;
}

void write_bundle(const std::filesystem::path& dir, const Bundle& b) {
  std::filesystem::create_directories(dir);
  nlohmann::json blocks = nlohmann::json::array();
  for (std::size_t i = 0; i < b.program.blocks.size(); ++i) {
    const ProgramBlock& blk = b.program.blocks[i];
    const std::string file = block_file(i, blk);
    nlohmann::json j = {{"label", blk.label}, {"file", file}};
    if (blk.kind == ProgramBlock::Kind::Pulses) {
      j["kind"] = "pulses";
      j["coupling_mask"] = blk.coupling_mask;
      write_pulse_file(dir / file, blk.pulses, b.program.platform);
    } else {
      j["kind"] = "rotations";
      write_rotations(dir / file, blk.rotations);
    }
    blocks.push_back(j);
  }
  write_state_file(dir / "target.txt", b.target);
  nlohmann::json m = {{"format", "qoc-bundle 1"},
                      {"algorithm", b.algorithm},
                      {"platform", platform_name(b.program.platform)},
                      {"num_sites", b.program.num_sites},
                      {"sample", sample_to_json(b.sample)},
                      {"target_file", "target.txt"},
                      {"blocks", blocks},
                      {"fidelity", b.fidelity},
                      {"tolerance", b.tolerance},
                      {"converged", b.converged},
                      {"seed", b.seed},
                      {"config_hash", b.config_hash},
                      {"config", b.config},
                      {"details", b.extra}};
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::invalid_argument("cannot write " + (dir / "manifest.json").string());
  out << m.dump(2) << '\n';
}

Bundle read_bundle(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::invalid_argument("bundle " + dir.string() + " has no manifest.json");
  Bundle b;
  try {
    const nlohmann::json m = nlohmann::json::parse(in);
    if (m.at("format").get<std::string>() != "qoc-bundle 1") throw std::invalid_argument("unsupported bundle format");
    b.algorithm = m.at("algorithm").get<std::string>();
    b.sample = sample_from_json(m.at("sample"));
    b.program.platform = parse_platform(m.at("platform").get<std::string>());
    b.program.num_sites = m.at("num_sites").get<int>();
    if (b.program.num_sites != sample_size(b.sample)) throw std::invalid_argument("site count differs from the sample");
    b.target = read_state_file(dir / m.at("target_file").get<std::string>(),
                               std::vector<int>(static_cast<std::size_t>(b.program.num_sites), 2));
    for (const auto& j : m.at("blocks")) {
      ProgramBlock blk;
      blk.label = j.at("label").get<std::string>();
      const std::string kind = j.at("kind").get<std::string>();
      const auto path = dir / j.at("file").get<std::string>();
      if (kind == "pulses") {
        blk.kind = ProgramBlock::Kind::Pulses;
        PulseFile f = read_pulse_file(path);
        if (f.platform != b.program.platform) throw std::invalid_argument(path.string() + ": platform mismatch");
        if (f.pulses.channels() != 2 * b.program.num_sites)
          throw std::invalid_argument(path.string() + ": channel count does not match the sample");
        blk.pulses = std::move(f.pulses);
        blk.coupling_mask = j.at("coupling_mask").get<std::vector<bool>>();
      } else if (kind == "rotations") {
        blk.kind = ProgramBlock::Kind::Rotations;
        blk.rotations = read_rotations(path, b.program.num_sites);
      } else {
        throw std::invalid_argument("unknown block kind '" + kind + "'");
      }
      b.program.blocks.push_back(std::move(blk));
    }
    b.fidelity = m.at("fidelity").get<double>();
    b.tolerance = m.at("tolerance").get<double>();
    b.converged = m.value("converged", false);
    b.seed = m.value("seed", std::uint64_t{0});
    b.config_hash = m.value("config_hash", std::string());
    b.config = m.value("config", nlohmann::json::object());
    b.extra = m.value("details", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed bundle manifest: " + std::string(e.what()));
  }
  return b;
}

double verify_bundle(const Bundle& b) { return verify_program(b.program, b.sample, b.target); }

}  // namespace qoc
