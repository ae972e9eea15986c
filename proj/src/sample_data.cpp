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

#include "qoc/sample_registry.hpp"

#include "qoc/errors.hpp"

#include <fstream>
#include <map>
#include <set>

namespace qoc {

namespace {

// Shifts of the diethyl fluoromalonate spins are lab-frame Larmor
// frequencies; the other NMR samples list rotating-frame offsets.
constexpr const char* kDiethylFluoromalonate2 = R"json({
  "platform": "nmr", "name": "diethyl-fluoromalonate-2",
  "spins": [
    {"label": "H", "shift_hz": 400e6, "t1_s": 2.8, "t2_s": 1.2},
    {"label": "F", "shift_hz": 376e6, "t1_s": 3.1, "t2_s": 1.3}
  ],
  "couplings": [{"a": "H", "b": "F", "j_hz": 47.6}]
})json";

constexpr const char* kDiethylFluoromalonate3 = R"json({
  "platform": "nmr", "name": "diethyl-fluoromalonate-3",
  "spins": [
    {"label": "C", "shift_hz": 100e6, "t1_s": 2.9, "t2_s": 1.1},
    {"label": "H", "shift_hz": 400e6, "t1_s": 2.8, "t2_s": 1.2},
    {"label": "F", "shift_hz": 376e6, "t1_s": 3.1, "t2_s": 1.3}
  ],
  "couplings": [
    {"a": "C", "b": "H", "j_hz": 160.7},
    {"a": "C", "b": "F", "j_hz": -194.4},
    {"a": "H", "b": "F", "j_hz": 47.6}
  ]
})json";

constexpr const char* kIodotrifluoroethylene = R"json({
  "platform": "nmr", "name": "iodotrifluoroethylene",
  "spins": [
    {"label": "C",  "shift_hz": 15479.88,  "t1_s": 7.9, "t2_s": 1.22},
    {"label": "F1", "shift_hz": -33132.45, "t1_s": 6.8, "t2_s": 0.66},
    {"label": "F2", "shift_hz": -42682.97, "t1_s": 4.4, "t2_s": 0.63},
    {"label": "F3", "shift_hz": -56445.71, "t1_s": 4.8, "t2_s": 0.61}
  ],
  "couplings": [
    {"a": "C",  "b": "F1", "j_hz": -297.71},
    {"a": "C",  "b": "F2", "j_hz": -275.56},
    {"a": "C",  "b": "F3", "j_hz": 39.17},
    {"a": "F1", "b": "F2", "j_hz": 64.74},
    {"a": "F1", "b": "F3", "j_hz": 51.50},
    {"a": "F2", "b": "F3", "j_hz": -129.08}
  ]
})json";

// T2* column of this sample is in ms in the source table; stored in s here.
constexpr const char* kBromotrifluorobenzene = R"json({
  "platform": "nmr", "name": "bromotrifluorobenzene",
  "spins": [
    {"label": "F1", "shift_hz": -47708, "t1_s": 0.8, "t2_s": 0.050},
    {"label": "F2", "shift_hz": -45257, "t1_s": 0.6, "t2_s": 0.050},
    {"label": "F3", "shift_hz": -37734, "t1_s": 0.8, "t2_s": 0.050},
    {"label": "H1", "shift_hz": 2396,   "t1_s": 1.5, "t2_s": 0.110},
    {"label": "H2", "shift_hz": 2393,   "t1_s": 1.5, "t2_s": 0.110}
  ],
  "couplings": [
    {"a": "F1", "b": "F2", "j_hz": -45.5},
    {"a": "F1", "b": "F3", "j_hz": 135.8},
    {"a": "F2", "b": "F3", "j_hz": 323.5},
    {"a": "F1", "b": "H1", "j_hz": 62.1},
    {"a": "F2", "b": "H1", "j_hz": 1468.2},
    {"a": "F3", "b": "H1", "j_hz": 1811.2},
    {"a": "F1", "b": "H2", "j_hz": 1781.1},
    {"a": "F2", "b": "H2", "j_hz": 122.9},
    {"a": "F3", "b": "H2", "j_hz": 60.9},
    {"a": "H1", "b": "H2", "j_hz": -10.1}
  ]
})json";

constexpr const char* kCrotonicAcid = R"json({
  "platform": "nmr", "name": "crotonic-acid",
  "spins": [
    {"label": "C1", "shift_hz": 1750.3},
    {"label": "C2", "shift_hz": 14930.1},
    {"label": "C3", "shift_hz": 12199.9},
    {"label": "C4", "shift_hz": 17173.7},
    {"label": "H1", "shift_hz": 2785.85},
    {"label": "H2", "shift_hz": 2320.25},
    {"label": "H3", "shift_hz": 718.487}
  ],
  "couplings": [
    {"a": "C1", "b": "C2", "j_hz": 40.8},
    {"a": "C1", "b": "C3", "j_hz": 1.6},
    {"a": "C2", "b": "C3", "j_hz": 69.5},
    {"a": "C1", "b": "C4", "j_hz": 8.47},
    {"a": "C2", "b": "C4", "j_hz": 1.4},
    {"a": "C3", "b": "C4", "j_hz": 71.04},
    {"a": "C1", "b": "H1", "j_hz": 4.0},
    {"a": "C2", "b": "H1", "j_hz": 155.6},
    {"a": "C3", "b": "H1", "j_hz": -1.8},
    {"a": "C4", "b": "H1", "j_hz": 6.5},
    {"a": "C1", "b": "H2", "j_hz": 6.64},
    {"a": "C2", "b": "H2", "j_hz": -0.7},
    {"a": "C3", "b": "H2", "j_hz": 162.9},
    {"a": "C4", "b": "H2", "j_hz": 3.3},
    {"a": "H1", "b": "H2", "j_hz": 15.81},
    {"a": "C1", "b": "H3", "j_hz": 128},
    {"a": "C2", "b": "H3", "j_hz": -7.1},
    {"a": "C3", "b": "H3", "j_hz": 6.6},
    {"a": "C4", "b": "H3", "j_hz": -0.9},
    {"a": "H1", "b": "H3", "j_hz": 6.9},
    {"a": "H2", "b": "H3", "j_hz": -1.7}
  ]
})json";

// Chain couplings are not part of the published parameter table; 20 MHz is
// the shipped default and can be overridden in a sample file.
constexpr const char* kScChain12 = R"json({
  "platform": "sc", "name": "sc-chain-12", "levels": 2,
  "qubits": [
    {"label": "Q1",  "omega_ghz": 4.978, "eta_mhz": -248, "t1_us": 40.1, "t2_us": 7.9},
    {"label": "Q2",  "omega_ghz": 4.183, "eta_mhz": -204, "t1_us": 34.7, "t2_us": 1.5},
    {"label": "Q3",  "omega_ghz": 5.192, "eta_mhz": -246, "t1_us": 30.8, "t2_us": 6.3},
    {"label": "Q4",  "omega_ghz": 4.352, "eta_mhz": -203, "t1_us": 43.2, "t2_us": 2.4},
    {"label": "Q5",  "omega_ghz": 5.110, "eta_mhz": -247, "t1_us": 31.8, "t2_us": 4.9},
    {"label": "Q6",  "omega_ghz": 4.226, "eta_mhz": -202, "t1_us": 34.3, "t2_us": 2.7},
    {"label": "Q7",  "omega_ghz": 5.030, "eta_mhz": -246, "t1_us": 46.5, "t2_us": 6.8},
    {"label": "Q8",  "omega_ghz": 4.300, "eta_mhz": -203, "t1_us": 38.1, "t2_us": 2.3},
    {"label": "Q9",  "omega_ghz": 5.142, "eta_mhz": -244, "t1_us": 32.2, "t2_us": 5.1},
    {"label": "Q10", "omega_ghz": 4.140, "eta_mhz": -203, "t1_us": 54.6, "t2_us": 3.5},
    {"label": "Q11", "omega_ghz": 4.996, "eta_mhz": -246, "t1_us": 29.6, "t2_us": 5.9},
    {"label": "Q12", "omega_ghz": 4.260, "eta_mhz": -201, "t1_us": 30.3, "t2_us": 3.0}
  ],
  "couplings_mhz": [20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20]
})json";

template <typename T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) return it->get<T>();
  return std::nullopt;
}

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

const std::vector<const char*>& embedded_sample_documents() {
  static const std::vector<const char*> docs = {kDiethylFluoromalonate2, kDiethylFluoromalonate3,
                                                kIodotrifluoroethylene, kBromotrifluorobenzene,
                                                kCrotonicAcid, kScChain12};
  return docs;
}

Sample sample_from_json(const nlohmann::json& doc) {
  const Platform platform = parse_platform(doc.at("platform").get<std::string>());
  if (platform == Platform::Nmr) {
    NmrSample s;
    s.name = doc.at("name").get<std::string>();
    for (const auto& j : doc.at("spins"))
      s.spins.push_back({j.at("label").get<std::string>(), j.value("shift_hz", 0.0),
                         optional_field<double>(j, "t1_s"), optional_field<double>(j, "t2_s")});
    std::set<std::string> labels;
    for (const auto& spin : s.spins)
      if (!labels.insert(spin.label).second)
        throw std::invalid_argument("sample '" + s.name + "': duplicate spin label " + spin.label);
    s.couplings_hz = Eigen::MatrixXd::Zero(s.size(), s.size());
    if (auto it = doc.find("couplings"); it != doc.end()) {
      for (const auto& c : *it) {
        const int a = s.index_of(c.at("a").get<std::string>());
        const int b = s.index_of(c.at("b").get<std::string>());
        if (a == b) throw std::invalid_argument("sample '" + s.name + "': self-coupling");
        const double jhz = c.at("j_hz").get<double>();
        s.couplings_hz(a, b) = jhz;
        s.couplings_hz(b, a) = jhz;
      }
    }
    s.validate();
    return s;
  }
  ScSample s;
  s.name = doc.at("name").get<std::string>();
  s.levels = doc.value("levels", 2);
  for (const auto& j : doc.at("qubits"))
    s.qubits.push_back({j.at("label").get<std::string>(), j.at("omega_ghz").get<double>(),
                        j.value("eta_mhz", 0.0), optional_field<double>(j, "t1_us"),
                        optional_field<double>(j, "t2_us")});
  s.coupling_mhz = doc.value("couplings_mhz", std::vector<double>{});
  s.validate();
  return s;
}

nlohmann::json sample_to_json(const Sample& sample) {
  nlohmann::json doc;
  if (const auto* nmr = std::get_if<NmrSample>(&sample)) {
    doc["platform"] = "nmr";
    doc["name"] = nmr->name;
    doc["spins"] = nlohmann::json::array();
    for (const auto& spin : nmr->spins) {
      nlohmann::json j = {{"label", spin.label}, {"shift_hz", spin.shift_hz}};
      put_optional(j, "t1_s", spin.t1_s);
      put_optional(j, "t2_s", spin.t2_s);
      doc["spins"].push_back(j);
    }
    doc["couplings"] = nlohmann::json::array();
    for (int a = 0; a < nmr->size(); ++a)
      for (int b = a + 1; b < nmr->size(); ++b)
        if (nmr->couplings_hz(a, b) != 0.0)
          doc["couplings"].push_back({{"a", nmr->spins[static_cast<std::size_t>(a)].label},
                                      {"b", nmr->spins[static_cast<std::size_t>(b)].label},
                                      {"j_hz", nmr->couplings_hz(a, b)}});
    return doc;
  }
  const auto& sc = std::get<ScSample>(sample);
  doc["platform"] = "sc";
  doc["name"] = sc.name;
  doc["levels"] = sc.levels;
  doc["qubits"] = nlohmann::json::array();
  for (const auto& q : sc.qubits) {
    nlohmann::json j = {{"label", q.label}, {"omega_ghz", q.omega_ghz}, {"eta_mhz", q.eta_mhz}};
    put_optional(j, "t1_us", q.t1_us);
    put_optional(j, "t2_us", q.t2_us);
    doc["qubits"].push_back(j);
  }
  doc["couplings_mhz"] = sc.coupling_mhz;
  return doc;
}

Sample load_sample_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sample file " + path.string());
  return sample_from_json(nlohmann::json::parse(in));
}

SampleRegistry::SampleRegistry() {
  for (const char* doc : embedded_sample_documents()) samples_.push_back(sample_from_json(nlohmann::json::parse(doc)));
}

const SampleRegistry& SampleRegistry::instance() {
  static const SampleRegistry registry;
  return registry;
}

const Sample& SampleRegistry::find(const std::string& name) const {
  for (const auto& s : samples_)
    if (sample_name(s) == name) return s;
  throw NotFoundError("no sample named '" + name + "'");
}

const NmrSample& SampleRegistry::nmr(const std::string& name) const {
  const Sample& s = find(name);
  if (const auto* p = std::get_if<NmrSample>(&s)) return *p;
  throw NotFoundError("sample '" + name + "' is not an NMR sample");
}

const ScSample& SampleRegistry::sc(const std::string& name) const {
  const Sample& s = find(name);
  if (const auto* p = std::get_if<ScSample>(&s)) return *p;
  throw NotFoundError("sample '" + name + "' is not a superconducting sample");
}

std::vector<std::string> SampleRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& s : samples_) out.push_back(sample_name(s));
  return out;
}

}  // namespace qoc
