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
#ifndef ASYMDP_SVT_HPP_
#define ASYMDP_SVT_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>

#include "asymdp/budget.hpp"
#include "asymdp/common.hpp"
#include "asymdp/noise.hpp"

namespace asymdp {

struct SvtOutcome {
  // 0-based position of the first query that crossed the noisy threshold;
  // absent when the stream (or the cap) ran out first.
  std::optional<std::size_t> halted_at;
  std::size_t queries_consumed = 0;

  bool operator==(const SvtOutcome&) const = default;
};

/// AboveThreshold with exponential noise: draws a noisy threshold
/// T + Expo(sensitivity/epsilon1) once, then perturbs each query with
/// Expo(sensitivity/epsilon2) and halts at the first query whose noisy value
/// reaches the noisy threshold.
///
/// Query values are extended reals: +infinity always halts at its index,
/// -infinity never does. At most `cap` queries are consumed; hitting the cap
/// without a halt is reported through the outcome, not as an error, so
/// truncation stays data-independent.
template <typename QueryStream>
  requires std::is_invocable_r_v<std::optional<double>, QueryStream&>
SvtOutcome above_threshold(QueryStream&& queries, double sensitivity,
                           double threshold, const PrivacyBudget& budget,
                           NoiseSource& rng, std::size_t cap) {
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw InvalidParameterError(
        "above_threshold: sensitivity must be finite and positive");
  }
  if (!std::isfinite(threshold)) {
    throw InvalidParameterError("above_threshold: threshold must be finite");
  }
  if (cap == 0) {
    throw InvalidParameterError("above_threshold: cap must be positive");
  }
  // epsilon = +inf yields scale 0, the exact zero-noise degenerate mode.
  const double noisy_threshold =
      threshold + sample_expo(sensitivity / budget.epsilon1(), rng);
  SvtOutcome out;
  while (out.queries_consumed < cap) {
    const std::optional<double> q = queries();
    if (!q.has_value()) {
      break;
    }
    if (*q != *q) {
      throw InvalidParameterError("above_threshold: query value is NaN");
    }
    const double noise = sample_expo(sensitivity / budget.epsilon2(), rng);
    const std::size_t index = out.queries_consumed++;
    if (*q + noise >= noisy_threshold) {
      out.halted_at = index;
      break;
    }
  }
  return out;
}

inline SvtOutcome above_threshold(std::span<const double> queries,
                                  double sensitivity, double threshold,
                                  const PrivacyBudget& budget, NoiseSource& rng,
                                  std::size_t cap) {
  std::size_t i = 0;
  auto stream = [&]() -> std::optional<double> {
    if (i >= queries.size()) return std::nullopt;
    return queries[i++];
  };
  return above_threshold(stream, sensitivity, threshold, budget, rng, cap);
}

}  // namespace asymdp

#endif  // ASYMDP_SVT_HPP_
