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
#ifndef ASYMDP_VARIANCE_HPP_
#define ASYMDP_VARIANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "asymdp/bounds.hpp"
#include "asymdp/budget.hpp"
#include "asymdp/common.hpp"
#include "asymdp/grid.hpp"
#include "asymdp/mechanisms.hpp"

namespace asymdp {

struct VarianceConfig {
  // Hamming distance beyond which lower bounds are relaxed to 0. Clamped to
  // the dataset size at use; keeps bound construction O(n + c^2).
  std::size_t cutoff = 100;
  // Declared data range [a, b]. Absent means unbounded data, in which case
  // every nonzero-distance upper bound is +infinity.
  std::optional<ValueRange> range;
  double beta = 1.005;
  std::size_t query_cap = kDefaultQueryCap;
};

/// Population variance, two-pass for stability.
inline double variance(std::span<const double> values) {
  if (values.empty()) {
    throw InvalidParameterError("variance: input must be nonempty");
  }
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return sq / n;
}

namespace internal {

// Prefix sums (values and squares) of the c smallest and c largest entries,
// plus the totals, all on mean-shifted data. Selection instead of a full
// sort keeps this O(n + c log c).
struct TailMoments {
  double total1 = 0.0, total2 = 0.0;
  std::vector<double> small1, small2;  // small1[k] = sum of the k smallest
  std::vector<double> large1, large2;  // large1[k] = sum of the k largest
};

inline TailMoments tail_moments(std::span<const double> values,
                                std::size_t c) {
  const std::size_t n = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> shifted(values.begin(), values.end());
  for (double& v : shifted) v -= mean;

  TailMoments m;
  for (double v : shifted) {
    m.total1 += v;
    m.total2 += v * v;
  }
  std::vector<double> smallest, largest;
  if (2 * c >= n) {
    std::sort(shifted.begin(), shifted.end());
    smallest.assign(shifted.begin(), shifted.begin() + c);
    largest.assign(shifted.rbegin(), shifted.rbegin() + c);
  } else if (c > 0) {
    std::nth_element(shifted.begin(), shifted.begin() + (c - 1), shifted.end());
    smallest.assign(shifted.begin(), shifted.begin() + c);
    std::sort(smallest.begin(), smallest.end());
    std::nth_element(shifted.begin() + c, shifted.end() - c, shifted.end());
    largest.assign(shifted.end() - c, shifted.end());
    std::sort(largest.begin(), largest.end(), std::greater<double>());
  }
  auto prefix = [](const std::vector<double>& v, std::vector<double>& p1,
                   std::vector<double>& p2) {
    p1.assign(v.size() + 1, 0.0);
    p2.assign(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      p1[i + 1] = p1[i] + v[i];
      p2[i + 1] = p2[i] + v[i] * v[i];
    }
  };
  prefix(smallest, m.small1, m.small2);
  prefix(largest, m.large1, m.large2);
  return m;
}

}  // namespace internal

/// Lower output bounds L^0..L^n of variance. For l <= cutoff this is the
/// exact bound
///   ((n-l)/n) * min over i in [0, l] of Var(sorted values with the l-i
///   smallest and i largest removed),
/// evaluated from prefix sums in O(1) per window; beyond the cutoff the
/// bound relaxes to 0, which variance can always reach.
inline std::vector<double> variance_lower_bounds(std::span<const double> values,
                                                 const VarianceConfig& config) {
  const std::size_t n = values.size();
  if (n == 0) {
    throw InvalidParameterError("variance_lower_bounds: input must be nonempty");
  }
  const std::size_t c = std::min(config.cutoff, n);
  const internal::TailMoments m = internal::tail_moments(values, c);

  std::vector<double> bounds(n + 1, 0.0);
  bounds[0] = variance(values);
  for (std::size_t l = 1; l <= c; ++l) {
    const std::size_t kept = n - l;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= l; ++i) {
      // Drop the (l - i) smallest and the i largest.
      if (kept == 0) {
        best = 0.0;
        break;
      }
      const double s1 = m.total1 - m.small1[l - i] - m.large1[i];
      const double s2 = m.total2 - m.small2[l - i] - m.large2[i];
      const double mu = s1 / static_cast<double>(kept);
      const double var =
          std::max(0.0, s2 / static_cast<double>(kept) - mu * mu);
      best = std::min(best, var);
    }
    bounds[l] =
        (static_cast<double>(kept) / static_cast<double>(n)) * best;
  }
  // Enforce the nonincreasing invariant against floating-point dust;
  // lowering a lower bound is always a valid relaxation.
  for (std::size_t l = 1; l <= n; ++l) {
    bounds[l] = std::max(0.0, std::min(bounds[l], bounds[l - 1]));
  }
  return bounds;
}

/// Upper output bounds U^0..U^n of variance. With a declared range [a, b]:
/// U^l = Var + l*(b-a)^2/n. Without one, U^l = +infinity for every l >= 1,
/// the inherent asymmetry of unbounded data.
inline std::vector<ExtendedReal> variance_upper_bounds(
    std::span<const double> values, const VarianceConfig& config) {
  const std::size_t n = values.size();
  if (n == 0) {
    throw InvalidParameterError("variance_upper_bounds: input must be nonempty");
  }
  const double center = variance(values);
  std::vector<ExtendedReal> bounds;
  bounds.reserve(n + 1);
  bounds.push_back(center);
  if (!config.range.has_value()) {
    for (std::size_t l = 1; l <= n; ++l) {
      bounds.push_back(ExtendedReal::infinity());
    }
    return bounds;
  }
  const ValueRange range = checked_range(config.range->lo, config.range->hi);
  for (double v : values) {
    if (!range.contains(v)) {
      throw InvalidParameterError(
          "variance_upper_bounds: value outside the declared range; clipping "
          "is the caller's responsibility");
    }
  }
  const double step = range.width() * range.width() / static_cast<double>(n);
  for (std::size_t l = 1; l <= n; ++l) {
    bounds.push_back(center + static_cast<double>(l) * step);
  }
  return bounds;
}

/// Assembles variance output bounds: exact-then-truncated lower bounds and
/// range (or infinite) upper bounds around the variance itself.
inline OutputBounds variance_output_bounds(std::span<const double> values,
                                           const VarianceConfig& config) {
  const std::vector<double> raw_lower = variance_lower_bounds(values, config);
  std::vector<ExtendedReal> upper = variance_upper_bounds(values, config);
  const double center = raw_lower[0];
  std::vector<ExtendedReal> lower;
  lower.reserve(raw_lower.size());
  for (double v : raw_lower) lower.push_back(v);
  // Both sequences are anchored at the same two-pass variance value.
  upper[0] = center;
  return OutputBounds(center, std::move(lower), std::move(upper));
}

/// Variance estimator: bounds as above, the nonnegative geometric candidate
/// grid, and a general (non-monotone) budget split.
inline Estimator build_variance_estimator(std::span<const double> values,
                                          const VarianceConfig& config,
                                          double total_epsilon) {
  return Estimator{
      variance_output_bounds(values, config),
      make_grid(GridKind::GeometricNonnegative, config.beta, std::nullopt,
                config.query_cap),
      PrivacyBudget::split(total_epsilon, /*monotone=*/false),
  };
}

}  // namespace asymdp

#endif  // ASYMDP_VARIANCE_HPP_
