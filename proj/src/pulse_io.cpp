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

#include "qoc/pulse_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qoc {

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) throw std::invalid_argument("not a number: '" + s + "'");
  return x;
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

// Reads the next non-empty line and checks its key.
std::vector<std::string> keyed_line(std::istream& in, const std::string& key) {
  std::string line;
  while (std::getline(in, line)) {
    auto t = tokens(line);
    if (t.empty()) continue;
    if (t.front() != key) throw std::invalid_argument("pulse file: expected '" + key + "', got '" + t.front() + "'");
    t.erase(t.begin());
    return t;
  }
  throw std::invalid_argument("pulse file: missing '" + key + "' line");
}

std::string single(const std::vector<std::string>& t, const std::string& key) {
  if (t.size() != 1) throw std::invalid_argument("pulse file: '" + key + "' takes one value");
  return t.front();
}

Eigen::VectorXd numbers(const std::vector<std::string>& t, std::size_t n, const std::string& key) {
  if (t.size() != n) throw std::invalid_argument("pulse file: '" + key + "' has the wrong number of values");
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = parse_double(t[i]);
  return v;
}

void write_row(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_double(v(i));
  out << '\n';
}

}  // namespace

void write_pulses(std::ostream& out, const PulseSequence& pulses, Platform platform) {
  pulses.validate();
  out << "qoc-pulse 1\n";
  out << "platform " << platform_name(platform) << '\n';
  out << "dt " << format_double(pulses.grid.dt) << '\n';
  out << "segments " << pulses.segments() << '\n';
  out << "channels " << pulses.channels() << '\n';
  out << "labels";
  for (const auto& l : pulses.labels) out << ' ' << l;
  out << '\n';
  out << "sign " << sign_name(pulses.sign) << '\n';
  out << "lower ";
  write_row(out, pulses.lower);
  out << "upper ";
  write_row(out, pulses.upper);
  out << "data\n";
  for (int k = 0; k < pulses.segments(); ++k) write_row(out, pulses.amplitudes.row(k).transpose());
}

PulseFile read_pulses(std::istream& in) {
  PulseFile f;
  if (single(keyed_line(in, "qoc-pulse"), "qoc-pulse") != "1")
    throw std::invalid_argument("pulse file: unsupported version");
  f.platform = parse_platform(single(keyed_line(in, "platform"), "platform"));
  PulseSequence& p = f.pulses;
  p.grid.dt = parse_double(single(keyed_line(in, "dt"), "dt"));
  const int k = std::stoi(single(keyed_line(in, "segments"), "segments"));
  const int a = std::stoi(single(keyed_line(in, "channels"), "channels"));
  if (k < 1 || a < 0) throw std::invalid_argument("pulse file: bad dimensions");
  p.grid.segments = k;
  p.labels = keyed_line(in, "labels");
  if (static_cast<int>(p.labels.size()) != a) throw std::invalid_argument("pulse file: label count differs from channels");
  p.sign = parse_sign(single(keyed_line(in, "sign"), "sign"));
  p.lower = numbers(keyed_line(in, "lower"), static_cast<std::size_t>(a), "lower");
  p.upper = numbers(keyed_line(in, "upper"), static_cast<std::size_t>(a), "upper");
  if (!keyed_line(in, "data").empty()) throw std::invalid_argument("pulse file: junk after 'data'");
  p.amplitudes.resize(k, a);
  std::string line;
  int row = 0;
  while (row < k && std::getline(in, line)) {
    const auto t = tokens(line);
    if (t.empty()) continue;
    p.amplitudes.row(row++) = numbers(t, static_cast<std::size_t>(a), "data").transpose();
  }
  if (row != k) throw std::invalid_argument("pulse file: expected " + std::to_string(k) + " data rows");
  while (std::getline(in, line))
    if (!tokens(line).empty()) throw std::invalid_argument("pulse file: trailing data rows");
  p.validate();
  return f;
}

void write_pulse_file(const std::filesystem::path& path, const PulseSequence& pulses, Platform platform) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write pulse file " + path.string());
  write_pulses(out, pulses, platform);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

PulseFile read_pulse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open pulse file " + path.string());
  return read_pulses(in);
}

}  // namespace qoc
