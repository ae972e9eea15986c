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
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

using namespace qoc;

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("format_double round trips awkward values exactly") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::uint64_t> bits;
  const double specials[] = {0.0, -0.0, 1.0 / 3.0, 2e4, -2e4, 5e-6, 0.1 + 0.2, std::numeric_limits<double>::min(),
                             std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(), M_PI};
  for (double x : specials) CHECK(bit_equal(parse_double(format_double(x)), x));
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t b = bits(rng);
    double x;
    std::memcpy(&x, &b, sizeof x);
    if (!std::isfinite(x)) continue;
    CHECK(bit_equal(parse_double(format_double(x)), x));
  }
  CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}

TEST_CASE("pulse files round trip bit-exactly") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const bool nmr = trial % 2 == 0;
    SystemModel m = nmr ? build_nmr(testing::random_nmr(n, rng), complement({}, n))
                        : build_sc(testing::random_sc(n, rng), std::vector<bool>(static_cast<std::size_t>(n - 1), true));
    const double bound = default_amplitude_bound(m.platform);
    PulseSequence p = testing::random_pulses(m, 1 + trial * 7, nmr ? 5e-6 : 0.05,
                                             trial % 3 ? Sign::Forward : Sign::Reversed, bound, rng);
    p.lower = uniform_bounds(p.channels(), -bound);
    p.upper = uniform_bounds(p.channels(), bound);
    std::stringstream ss;
    write_pulses(ss, p, m.platform);
    PulseFile f = read_pulses(ss);
    CHECK(f.platform == m.platform);
    CHECK(f.pulses.sign == p.sign);
    CHECK(f.pulses.labels == p.labels);
    CHECK(bit_equal(f.pulses.grid.dt, p.grid.dt));
    REQUIRE(f.pulses.amplitudes.rows() == p.amplitudes.rows());
    REQUIRE(f.pulses.amplitudes.cols() == p.amplitudes.cols());
    bool same = true;
    for (Eigen::Index k = 0; k < p.amplitudes.rows(); ++k)
      for (Eigen::Index a = 0; a < p.amplitudes.cols(); ++a)
        same = same && bit_equal(f.pulses.amplitudes(k, a), p.amplitudes(k, a));
    CHECK(same);
    CHECK(f.pulses.lower == p.lower);
    CHECK(f.pulses.upper == p.upper);
  }
}

TEST_CASE("pulse file on disk") {
  std::mt19937_64 rng(9);
  SystemModel m = build_nmr(testing::random_nmr(2, rng), {0, 1});
  PulseSequence p = testing::random_pulses(m, 30, 5e-6, Sign::Forward, 2e4, rng);
  p.lower = uniform_bounds(4, -2e4);
  p.upper = uniform_bounds(4, 2e4);
  const auto path = std::filesystem::temp_directory_path() / "qoc_test_roundtrip.pulse";
  write_pulse_file(path, p, Platform::Nmr);
  PulseFile f = read_pulse_file(path);
  CHECK(f.pulses.amplitudes == p.amplitudes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_pulse_file(path), std::invalid_argument);
}

TEST_CASE("malformed pulse text is rejected") {
  std::mt19937_64 rng(3);
  SystemModel m = build_nmr(testing::random_nmr(1, rng), {0});
  PulseSequence p = testing::random_pulses(m, 3, 5e-6, Sign::Forward, 1.0, rng);
  p.lower = uniform_bounds(2, -2.0);
  p.upper = uniform_bounds(2, 2.0);
  std::stringstream ss;
  write_pulses(ss, p, Platform::Nmr);
  const std::string good = ss.str();

  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_pulses(in), std::invalid_argument);
  };
  fails("");
  fails("qoc-pulse 2\n" + good.substr(good.find('\n') + 1));
  fails(good.substr(0, good.rfind('\n', good.size() - 2) + 1));  // one data row short
  fails(good + "1 2\n");                                         // extra row
  std::string bad_sign = good;
  bad_sign.replace(bad_sign.find("forward"), 7, "sideway");
  fails(bad_sign);
}
