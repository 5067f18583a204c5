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
#ifndef ASYMDP_EXTENDED_REAL_HPP_
#define ASYMDP_EXTENDED_REAL_HPP_

#include <compare>
#include <limits>

#include "asymdp/common.hpp"

namespace asymdp {

/// A real number or +/-infinity. NaN is never representable, so ordering is
/// total and comparisons against sentinel infinities are always meaningful.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (v != v) {
      throw InvalidParameterError("ExtendedReal cannot hold NaN");
    }
  }

  static constexpr ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }
  static constexpr ExtendedReal neg_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }

  constexpr double value() const { return v_; }
  constexpr bool finite() const {
    return v_ > -std::numeric_limits<double>::infinity() &&
           v_ < std::numeric_limits<double>::infinity();
  }

  friend constexpr auto operator<=>(const ExtendedReal&,
                                    const ExtendedReal&) = default;

 private:
  double v_ = 0.0;
};

}  // namespace asymdp

#endif  // ASYMDP_EXTENDED_REAL_HPP_
