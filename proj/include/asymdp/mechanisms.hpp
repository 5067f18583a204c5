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
#ifndef ASYMDP_MECHANISMS_HPP_
#define ASYMDP_MECHANISMS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymdp/bounds.hpp"
#include "asymdp/budget.hpp"
#include "asymdp/common.hpp"
#include "asymdp/grid.hpp"
#include "asymdp/noise.hpp"
#include "asymdp/svt.hpp"

namespace asymdp {

enum class Mechanism { Ism, Asm };

inline const char* mechanism_name(Mechanism m) {
  return m == Mechanism::Ism ? "ISM" : "ASM";
}

inline Mechanism parse_mechanism(const std::string& s) {
  if (s == "ISM" || s == "ism") return Mechanism::Ism;
  if (s == "ASM" || s == "asm") return Mechanism::Asm;
  throw InvalidParameterError("unknown mechanism: " + s);
}

struct MechanismResult {
  double estimate = 0.0;
  std::size_t queries_used = 0;
  Mechanism mechanism = Mechanism::Ism;
  double total_epsilon = 0.0;
  // ASM only: the candidate stream (or the query cap) ran out without a
  // halt, and `estimate` is the final grid value.
  bool exhausted = false;

  bool operator==(const MechanismResult&) const = default;
};

/// Everything needed to run a mechanism on one dataset: the output bounds,
/// the candidate-output grid, and the budget with the right monotonicity.
struct Estimator {
  OutputBounds bounds;
  OutputGrid grid;
  PrivacyBudget budget;
};

/// Inverse sensitivity mechanism: the exponential mechanism over the
/// inverse-sensitivity metric, in interval form. Each side-l interval
/// ([L^l, L^{l-1}] below, [U^{l-1}, U^l] above) is drawn with probability
/// proportional to its length times exp(-l*epsilon/2), then a point is drawn
/// uniformly inside it. Requires finite outermost bounds; zero-length
/// intervals carry zero mass, and l = 0 (the single point at the center)
/// carries none either.
inline MechanismResult ism_sample(const OutputBounds& bounds, double epsilon,
                                  NoiseSource& rng) {
  if (!(epsilon > 0.0)) {
    throw InvalidParameterError("ism_sample: epsilon must be positive");
  }
  const std::size_t n = bounds.n();
  if (!bounds.lower()[n].finite() || !bounds.upper()[n].finite()) {
    throw UnboundedDomainError(
        "ism_sample: output bounds are infinite; clip the data to a finite "
        "range or use the asymmetric mechanism");
  }
  struct Piece {
    double lo, hi;
    std::size_t level;
  };
  std::vector<Piece> pieces;
  pieces.reserve(2 * n);
  for (std::size_t l = 1; l <= n; ++l) {
    const double llo = bounds.lower()[l].value();
    const double lhi = bounds.lower()[l - 1].value();
    if (lhi > llo) pieces.push_back({llo, lhi, l});
    const double ulo = bounds.upper()[l - 1].value();
    const double uhi = bounds.upper()[l].value();
    if (uhi > ulo) pieces.push_back({ulo, uhi, l});
  }
  MechanismResult result{bounds.center(), 0, Mechanism::Ism, epsilon, false};
  if (pieces.empty()) {
    return result;  // all mass at the center
  }
  std::size_t min_level = pieces.front().level;
  for (const Piece& p : pieces) min_level = std::min(min_level, p.level);
  // Weights relative to the innermost populated level; this stays finite for
  // arbitrarily large epsilon (epsilon = +inf keeps only that level).
  std::vector<double> cumulative;
  cumulative.reserve(pieces.size());
  double total = 0.0;
  for (const Piece& p : pieces) {
    const double rel =
        p.level == min_level
            ? 1.0
            : std::exp(-0.5 * epsilon * static_cast<double>(p.level - min_level));
    total += (p.hi - p.lo) * rel;
    cumulative.push_back(total);
  }
  const double u = rng.uniform01() * total;  // in (0, total]
  const std::size_t chosen = std::min<std::size_t>(
      std::lower_bound(cumulative.begin(), cumulative.end(), u) -
          cumulative.begin(),
      pieces.size() - 1);
  result.estimate = rng.uniform(pieces[chosen].lo, pieces[chosen].hi);
  return result;
}

namespace internal {

// Single AboveThreshold pass over grid values, querying the reflective
// inverse sensitivity of each candidate through the amortized cursor walk
// (grid passes are increasing by construction).
inline SvtOutcome asm_pass(const OutputBounds& bounds, const OutputGrid& grid,
                           std::size_t pass, const PrivacyBudget& budget,
                           NoiseSource& rng) {
  std::size_t i = 0;
  const std::size_t size = grid.pass_size(pass);
  ReflectiveScanner scanner(bounds);
  auto stream = [&]() -> std::optional<double> {
    if (i >= size) return std::nullopt;
    return scanner(grid.value(pass, i++));
  };
  return above_threshold(stream, /*sensitivity=*/1.0, /*threshold=*/0.0,
                         budget, rng, grid.cap());
}

}  // namespace internal

/// Asymmetric sensitivity mechanism: streams the reflective inverse
/// sensitivities of an increasing candidate grid into AboveThreshold
/// (sensitivity 1, threshold 0) and returns the halting candidate.
///
/// Two-pass grids search the positives first and fall back to the negatives
/// only when the first pass halts at its very first query. If a pass ends
/// without halting, the final grid value is returned with the exhausted flag
/// set; truncation is data-independent, so this is a reported condition, not
/// an error.
inline MechanismResult asm_select(const OutputBounds& bounds,
                                  const OutputGrid& grid,
                                  const PrivacyBudget& budget,
                                  NoiseSource& rng) {
  if (grid.pass_size(0) == 0) {
    throw InvalidParameterError("asm_select: empty output grid");
  }
  MechanismResult result;
  result.mechanism = Mechanism::Asm;
  result.total_epsilon = budget.total();
  const SvtOutcome first = internal::asm_pass(bounds, grid, 0, budget, rng);
  result.queries_used = first.queries_consumed;
  const bool fall_back = grid.pass_count() == 2 && first.halted_at == 0;
  if (first.halted_at.has_value() && !fall_back) {
    result.estimate = grid.value(0, *first.halted_at);
    return result;
  }
  if (fall_back) {
    const SvtOutcome second = internal::asm_pass(bounds, grid, 1, budget, rng);
    result.queries_used += second.queries_consumed;
    if (second.halted_at.has_value()) {
      result.estimate = grid.value(1, *second.halted_at);
    } else {
      result.estimate = grid.value(1, grid.pass_size(1) - 1);
      result.exhausted = true;
    }
    return result;
  }
  result.estimate = grid.value(0, grid.pass_size(0) - 1);
  result.exhausted = true;
  return result;
}

/// Convenience overload for an explicit ascending candidate list.
inline MechanismResult asm_select(const OutputBounds& bounds,
                                  std::span<const double> candidates,
                                  const PrivacyBudget& budget,
                                  NoiseSource& rng) {
  if (candidates.empty()) {
    throw InvalidParameterError("asm_select: empty output grid");
  }
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (!(candidates[i] > candidates[i - 1])) {
      throw InvalidParameterError(
          "asm_select: candidates must be strictly increasing");
    }
  }
  std::size_t i = 0;
  ReflectiveScanner scanner(bounds);
  auto stream = [&]() -> std::optional<double> {
    if (i >= candidates.size()) return std::nullopt;
    return scanner(candidates[i++]);
  };
  const SvtOutcome out = above_threshold(stream, 1.0, 0.0, budget, rng,
                                         candidates.size());
  MechanismResult result;
  result.mechanism = Mechanism::Asm;
  result.total_epsilon = budget.total();
  result.queries_used = out.queries_consumed;
  if (out.halted_at.has_value()) {
    result.estimate = candidates[*out.halted_at];
  } else {
    result.estimate = candidates.back();
    result.exhausted = true;
  }
  return result;
}

/// Asymmetry of the sensitivities in [0, 1/2]: the weighted marginal masses
/// W_U = sum_l DeltaU^l * exp(-l*epsilon/2) and W_L likewise give
/// |W_U / (W_U + W_L) - 1/2|, i.e. how far the center sits from being the
/// median of the inverse sensitivity mechanism. Exactly one infinite side
/// gives 1/2; two infinite sides give 0.
inline double asymmetry(const OutputBounds& bounds, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError(
        "asymmetry: epsilon must be finite and positive");
  }
  const MarginalDeltas deltas = marginal_deltas(bounds);
  double weight_upper = 0.0, weight_lower = 0.0;
  bool infinite_upper = false, infinite_lower = false;
  for (std::size_t l = 1; l <= bounds.n(); ++l) {
    // exp(-l*eps/2) is mathematically positive for every l, so an infinite
    // delta forces an infinite side even where the factor underflows.
    const double factor = std::exp(-0.5 * epsilon * static_cast<double>(l));
    const ExtendedReal du = deltas.upper[l - 1];
    const ExtendedReal dl = deltas.lower[l - 1];
    if (!du.finite()) {
      infinite_upper = true;
    } else {
      weight_upper += du.value() * factor;
    }
    if (!dl.finite()) {
      infinite_lower = true;
    } else {
      weight_lower += dl.value() * factor;
    }
  }
  if (infinite_upper && infinite_lower) return 0.0;
  if (infinite_upper || infinite_lower) return 0.5;
  const double total = weight_upper + weight_lower;
  if (total == 0.0) {
    throw DegenerateBoundsError(
        "asymmetry: all marginal sensitivities are zero");
  }
  return std::abs(weight_upper / total - 0.5);
}

}  // namespace asymdp

#endif  // ASYMDP_MECHANISMS_HPP_
