//
// Copyright 2026 The asymdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#ifndef ASYMDP_COMMON_HPP_
#define ASYMDP_COMMON_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

namespace asymdp {

// An argument violated a documented precondition.
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mechanism that needs finite output bounds was handed infinite ones.
// Callers must either clip their data or switch to the asymmetric mechanism.
class UnboundedDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Output bounds carry no probability mass at all.
class DegenerateBoundsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// File ingestion or emission failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed interval [lo, hi]; used for data and model-output range restrictions.
struct ValueRange {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
};

inline ValueRange checked_range(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidParameterError("range endpoints must be finite with lo < hi");
  }
  return ValueRange{lo, hi};
}

}  // namespace asymdp

#endif  // ASYMDP_COMMON_HPP_
