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

#ifndef QOC_PULSE_IO_HPP
#define QOC_PULSE_IO_HPP

#include "qoc/pulse.hpp"

#include <filesystem>
#include <iosfwd>

namespace qoc {

// Text layout:
//
//   qoc-pulse 1
//   platform nmr
//   dt 5e-06
//   segments 600
//   channels 4
//   labels H.x H.y F.x F.y
//   sign forward
//   lower -20000 -20000 -20000 -20000
//   upper 20000 20000 20000 20000
//   data
//   <K rows of A amplitudes>
//
// Numbers are written in shortest round-trip form, so reading a written file
// gives back identical doubles.

struct PulseFile {
  Platform platform = Platform::Nmr;
  PulseSequence pulses;
};

void write_pulses(std::ostream& out, const PulseSequence& pulses, Platform platform);
PulseFile read_pulses(std::istream& in);  // std::invalid_argument on malformed input

void write_pulse_file(const std::filesystem::path& path, const PulseSequence& pulses, Platform platform);
PulseFile read_pulse_file(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(const std::string& s);  // whole string must be a number

}  // namespace qoc

#endif  // QOC_PULSE_IO_HPP
