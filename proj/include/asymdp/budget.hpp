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
#ifndef ASYMDP_BUDGET_HPP_
#define ASYMDP_BUDGET_HPP_

#include <cmath>
#include <limits>

#include "asymdp/common.hpp"

namespace asymdp {

/// Privacy budget for the sparse-vector primitive: epsilon1 covers the noisy
/// threshold, epsilon2 the per-query noise. The accounted total is
/// epsilon1 + epsilon2 for monotonic query streams and epsilon1 + 2*epsilon2
/// otherwise.
///
/// Both epsilons may be +infinity, a degenerate non-private mode in which all
/// noise scales collapse to zero; tests use it to pin down exact control flow.
class PrivacyBudget {
 public:
  PrivacyBudget(double epsilon1, double epsilon2, bool monotone)
      : epsilon1_(epsilon1), epsilon2_(epsilon2), monotone_(monotone) {
    if (!(epsilon1 > 0.0) || !(epsilon2 > 0.0)) {
      throw InvalidParameterError("PrivacyBudget: epsilons must be positive");
    }
  }

  /// Default split of a total budget: half/half for monotone streams,
  /// (eps/2, eps/4) for general streams. Either way the accounted total is
  /// exactly the requested epsilon.
  static PrivacyBudget split(double total_epsilon, bool monotone) {
    if (!(total_epsilon > 0.0)) {
      throw InvalidParameterError("PrivacyBudget: total epsilon must be positive");
    }
    return monotone
               ? PrivacyBudget(total_epsilon / 2, total_epsilon / 2, true)
               : PrivacyBudget(total_epsilon / 2, total_epsilon / 4, false);
  }

  /// Degenerate zero-noise budget (infinite epsilons). Not private.
  static PrivacyBudget zero_noise(bool monotone) {
    const double inf = std::numeric_limits<double>::infinity();
    return PrivacyBudget(inf, inf, monotone);
  }

  double epsilon1() const { return epsilon1_; }
  double epsilon2() const { return epsilon2_; }
  bool monotone() const { return monotone_; }

  double total() const {
    return monotone_ ? epsilon1_ + epsilon2_ : epsilon1_ + 2.0 * epsilon2_;
  }

 private:
  double epsilon1_;
  double epsilon2_;
  bool monotone_;
};

inline double total_epsilon(const PrivacyBudget& budget) {
  return budget.total();
}

}  // namespace asymdp

#endif  // ASYMDP_BUDGET_HPP_
