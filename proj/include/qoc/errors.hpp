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

#ifndef QOC_ERRORS_HPP
#define QOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qoc {

// Bad arguments (dimension mismatch, invalid site sets, ...) are reported as
// std::invalid_argument. The types below cover the remaining failure classes.

/// Numerical breakdown: failed eigendecomposition, NaN/Inf cost, etc.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an API contract (wrong sign convention, unaccepted step).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Registry lookup miss.
class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace qoc

#endif  // QOC_ERRORS_HPP
