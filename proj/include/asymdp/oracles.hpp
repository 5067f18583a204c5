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
// Brute-force reference implementations. These back the test suite and the
// regeneration of expected values; they are deliberately independent of the
// production code paths they check (linear scans instead of binary search,
// subset enumeration instead of window formulas) and are never called from
// the mechanisms themselves.
#ifndef ASYMDP_ORACLES_HPP_
#define ASYMDP_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "asymdp/bounds.hpp"
#include "asymdp/common.hpp"
#include "asymdp/grid.hpp"
#include "asymdp/variance.hpp"

namespace asymdp {

/// A dataset and a copy differing in exactly one coordinate (swap
/// neighboring).
struct NeighborPair {
  std::vector<double> base;
  std::vector<double> perturbed;
};

inline NeighborPair make_neighbor(std::span<const double> base,
                                  std::size_t index, double new_value) {
  if (index >= base.size()) {
    throw InvalidParameterError("make_neighbor: index out of range");
  }
  NeighborPair pair;
  pair.base.assign(base.begin(), base.end());
  pair.perturbed = pair.base;
  pair.perturbed[index] = new_value;
  return pair;
}

/// Exact variance lower bound at Hamming distance l by enumerating every
/// size-l subset to replace: min over subsets S of ((n-|S|)/n) * Var(rest).
/// Exponential time; refuses n > 12.
inline double brute_variance_lower(std::span<const double> values,
                                   std::size_t l) {
  const std::size_t n = values.size();
  if (n == 0 || n > 12) {
    throw InvalidParameterError(
        "brute_variance_lower: need 1 <= n <= 12 (subset enumeration)");
  }
  if (l > n) {
    throw InvalidParameterError("brute_variance_lower: l must be at most n");
  }
  if (l == 0) return variance(values);
  if (l == n) return 0.0;
  std::vector<std::size_t> pick(l);
  std::iota(pick.begin(), pick.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> kept;
  kept.reserve(n - l);
  while (true) {
    kept.clear();
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (next < l && pick[next] == i) {
        ++next;
      } else {
        kept.push_back(values[i]);
      }
    }
    best = std::min(best, variance(kept));
    // Advance to the next l-combination of [0, n).
    std::size_t k = l;
    while (k > 0 && pick[k - 1] == n - l + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < l; ++j) pick[j] = pick[j - 1] + 1;
  }
  return (static_cast<double>(n - l) / static_cast<double>(n)) * best;
}

/// Inverse sensitivity by linear scan over l; the reference for the binary
/// search.
inline std::optional<std::size_t> len_by_scan(const OutputBounds& bounds,
                                              double t) {
  for (std::size_t l = 0; l <= bounds.n(); ++l) {
    if (bounds.lower()[l].value() <= t && t <= bounds.upper()[l].value()) {
      return l;
    }
  }
  return std::nullopt;
}

inline double reflective_by_scan(const OutputBounds& bounds, double t) {
  const double delta = t - bounds.center();
  if (delta == 0.0) return 0.0;
  const double sign = delta > 0.0 ? 1.0 : -1.0;
  const std::optional<std::size_t> len = len_by_scan(bounds, t);
  if (!len.has_value()) return sign * std::numeric_limits<double>::infinity();
  return sign * (static_cast<double>(*len) - 0.5);
}

struct ScanOutcome {
  double estimate = 0.0;
  std::size_t queries_used = 0;
  bool exhausted = false;
};

namespace internal {

inline std::optional<std::size_t> scan_pass(const OutputBounds& bounds,
                                            const OutputGrid& grid,
                                            std::size_t pass,
                                            std::size_t& queries) {
  for (std::size_t i = 0; i < grid.pass_size(pass); ++i) {
    ++queries;
    if (reflective_by_scan(bounds, grid.value(pass, i)) >= 0.0) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace internal

/// What the asymmetric mechanism does with all noise scales forced to zero:
/// the first grid value whose reflective inverse sensitivity is >= 0, with
/// the same two-pass fallback rule, else the last value plus the exhaustion
/// flag.
inline ScanOutcome zero_noise_scan(const OutputBounds& bounds,
                                   const OutputGrid& grid) {
  ScanOutcome out;
  const std::optional<std::size_t> first =
      internal::scan_pass(bounds, grid, 0, out.queries_used);
  const bool fall_back = grid.pass_count() == 2 && first == 0;
  if (first.has_value() && !fall_back) {
    out.estimate = grid.value(0, *first);
    return out;
  }
  if (fall_back) {
    const std::optional<std::size_t> second =
        internal::scan_pass(bounds, grid, 1, out.queries_used);
    if (second.has_value()) {
      out.estimate = grid.value(1, *second);
    } else {
      out.estimate = grid.value(1, grid.pass_size(1) - 1);
      out.exhausted = true;
    }
    return out;
  }
  out.estimate = grid.value(0, grid.pass_size(0) - 1);
  out.exhausted = true;
  return out;
}

inline ScanOutcome zero_noise_scan(const OutputBounds& bounds,
                                   std::span<const double> candidates) {
  if (candidates.empty()) {
    throw InvalidParameterError("zero_noise_scan: empty candidate list");
  }
  ScanOutcome out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    ++out.queries_used;
    if (reflective_by_scan(bounds, candidates[i]) >= 0.0) {
      out.estimate = candidates[i];
      return out;
    }
  }
  out.estimate = candidates.back();
  out.exhausted = true;
  return out;
}

/// The inverse sensitivity mechanism's piecewise-constant density: one piece
/// per positive-length side interval, height proportional to
/// exp(-l*epsilon/2), normalized to total mass 1. Pieces are ascending and
/// contiguous from L^n to U^n.
struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  double height = 0.0;
  std::size_t level = 0;

  double mass() const { return height * (hi - lo); }
};

struct IsmDensity {
  std::vector<DensityPiece> pieces;

  double mass_above(double t) const {
    double mass = 0.0;
    for (const DensityPiece& p : pieces) {
      if (p.lo >= t) {
        mass += p.mass();
      } else if (p.hi > t) {
        mass += p.height * (p.hi - t);
      }
    }
    return mass;
  }
};

inline IsmDensity analytic_ism_density(const OutputBounds& bounds,
                                       double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError(
        "analytic_ism_density: epsilon must be finite and >= 0");
  }
  const std::size_t n = bounds.n();
  if (!bounds.lower()[n].finite() || !bounds.upper()[n].finite()) {
    throw UnboundedDomainError(
        "analytic_ism_density: outermost bounds must be finite");
  }
  IsmDensity density;
  for (std::size_t l = n; l >= 1; --l) {
    const double lo = bounds.lower()[l].value();
    const double hi = bounds.lower()[l - 1].value();
    if (hi > lo) density.pieces.push_back({lo, hi, 0.0, l});
  }
  for (std::size_t l = 1; l <= n; ++l) {
    const double lo = bounds.upper()[l - 1].value();
    const double hi = bounds.upper()[l].value();
    if (hi > lo) density.pieces.push_back({lo, hi, 0.0, l});
  }
  if (density.pieces.empty()) {
    throw DegenerateBoundsError(
        "analytic_ism_density: support has zero length");
  }
  std::size_t min_level = density.pieces.front().level;
  for (const DensityPiece& p : density.pieces) {
    min_level = std::min(min_level, p.level);
  }
  double normalizer = 0.0;
  for (DensityPiece& p : density.pieces) {
    p.height = p.level == min_level
                   ? 1.0
                   : std::exp(-0.5 * epsilon *
                              static_cast<double>(p.level - min_level));
    normalizer += p.mass();
  }
  for (DensityPiece& p : density.pieces) {
    p.height /= normalizer;
  }
  return density;
}

}  // namespace asymdp

#endif  // ASYMDP_ORACLES_HPP_
