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
#ifndef ASYMDP_BOUNDS_HPP_
#define ASYMDP_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "asymdp/common.hpp"
#include "asymdp/extended_real.hpp"

namespace asymdp {

/// Paired sequences L^0..L^n and U^0..U^n of extended reals, anchored at the
/// function value: L^l (U^l) is a lower (upper) bound on what the function
/// can reach by changing at most l records of the underlying dataset.
///
/// Invariants, checked at construction:
///   - both sequences have length n+1 and start at the center,
///   - the lower sequence is nonincreasing, the upper one nondecreasing.
///
/// Immutable after construction; safe for concurrent reads.
class OutputBounds {
 public:
  OutputBounds(double center, std::vector<ExtendedReal> lower,
               std::vector<ExtendedReal> upper)
      : center_(center), lower_(std::move(lower)), upper_(std::move(upper)) {
    if (!std::isfinite(center_)) {
      throw InvalidParameterError("OutputBounds: center must be finite");
    }
    if (lower_.empty() || lower_.size() != upper_.size()) {
      throw InvalidParameterError(
          "OutputBounds: lower/upper must be nonempty and of equal length");
    }
    if (lower_.front() != ExtendedReal(center_) ||
        upper_.front() != ExtendedReal(center_)) {
      throw InvalidParameterError(
          "OutputBounds: L^0 and U^0 must equal the center");
    }
    for (std::size_t l = 1; l < lower_.size(); ++l) {
      if (lower_[l] > lower_[l - 1]) {
        throw InvalidParameterError(
            "OutputBounds: lower sequence must be nonincreasing");
      }
      if (upper_[l] < upper_[l - 1]) {
        throw InvalidParameterError(
            "OutputBounds: upper sequence must be nondecreasing");
      }
    }
  }

  double center() const { return center_; }
  std::size_t n() const { return lower_.size() - 1; }
  const std::vector<ExtendedReal>& lower() const { return lower_; }
  const std::vector<ExtendedReal>& upper() const { return upper_; }

  bool operator==(const OutputBounds&) const = default;

 private:
  double center_;
  std::vector<ExtendedReal> lower_;
  std::vector<ExtendedReal> upper_;
};

/// Smallest l with L^l <= t <= U^l, by binary search over the two monotone
/// sequences; nullopt (conceptually +infinity) when t lies outside
/// [L^n, U^n].
inline std::optional<std::size_t> inverse_sensitivity(const OutputBounds& b,
                                                      double t) {
  if (!std::isfinite(t)) {
    throw InvalidParameterError("inverse_sensitivity: t must be finite");
  }
  const std::size_t n = b.n();
  const auto& lower = b.lower();
  const auto& upper = b.upper();
  if (t < lower[n].value() || t > upper[n].value()) {
    return std::nullopt;
  }
  // Smallest index satisfying a predicate that is monotone in l.
  auto first_true = [n](auto&& pred) {
    if (pred(0)) return std::size_t{0};
    std::size_t lo = 0, hi = n;  // pred(lo) false, pred(hi) true
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      (pred(mid) ? hi : lo) = mid;
    }
    return hi;
  };
  const std::size_t from_lower =
      first_true([&](std::size_t l) { return lower[l].value() <= t; });
  const std::size_t from_upper =
      first_true([&](std::size_t l) { return upper[l].value() >= t; });
  return std::max(from_lower, from_upper);
}

/// Signed, half-shifted inverse sensitivity:
/// sgn(t - center) * (inverse_sensitivity(t) - 1/2), with sgn(0) = 0 so the
/// value at the center is exactly 0. Finite results lie on the half-integer
/// lattice {0, +/-1/2, +/-3/2, ...}; t outside the outermost bounds maps to
/// +/-infinity carrying the sign of t - center.
inline double reflective_inverse_sensitivity(const OutputBounds& b, double t) {
  const double delta = t - b.center();
  if (delta == 0.0) {
    return 0.0;
  }
  const double sign = delta > 0.0 ? 1.0 : -1.0;
  const std::optional<std::size_t> len = inverse_sensitivity(b, t);
  if (!len.has_value()) {
    return sign * std::numeric_limits<double>::infinity();
  }
  return sign * (static_cast<double>(*len) - 0.5);
}

/// Amortized evaluator of reflective_inverse_sensitivity for a
/// nondecreasing stream of outputs: two cursors walk the monotone bound
/// sequences instead of re-searching, so a whole candidate sweep costs
/// O(n + number of queries). Results are identical to the one-shot form.
class ReflectiveScanner {
 public:
  explicit ReflectiveScanner(const OutputBounds& bounds)
      : bounds_(bounds), from_lower_(bounds.n()), from_upper_(0) {}

  /// Value at t; t must be >= every previous argument.
  double operator()(double t) {
    const double delta = t - bounds_.center();
    if (delta == 0.0) {
      return 0.0;
    }
    const double sign = delta > 0.0 ? 1.0 : -1.0;
    const std::size_t n = bounds_.n();
    const auto& lower = bounds_.lower();
    const auto& upper = bounds_.upper();
    if (t < lower[n].value() || t > upper[n].value()) {
      return sign * std::numeric_limits<double>::infinity();
    }
    while (from_lower_ > 0 && lower[from_lower_ - 1].value() <= t) {
      --from_lower_;
    }
    while (upper[from_upper_].value() < t) {
      ++from_upper_;
    }
    const std::size_t len = std::max(from_lower_, from_upper_);
    return sign * (static_cast<double>(len) - 0.5);
  }

 private:
  const OutputBounds& bounds_;
  std::size_t from_lower_;
  std::size_t from_upper_;
};

/// Marginal sensitivities: deltas.lower[l-1] = L^{l-1} - L^l and
/// deltas.upper[l-1] = U^l - U^{l-1} for l = 1..n. Two consecutive infinite
/// bounds difference to 0, so a fully infinite side reads as one
/// infinite-mass step rather than a chain of them.
struct MarginalDeltas {
  std::vector<ExtendedReal> lower;
  std::vector<ExtendedReal> upper;
};

inline MarginalDeltas marginal_deltas(const OutputBounds& b) {
  const std::size_t n = b.n();
  MarginalDeltas out;
  out.lower.reserve(n);
  out.upper.reserve(n);
  auto diff = [](ExtendedReal hi, ExtendedReal lo) -> ExtendedReal {
    if (!hi.finite() && hi == lo) return 0.0;
    return hi.value() - lo.value();
  };
  for (std::size_t l = 1; l <= n; ++l) {
    out.lower.push_back(diff(b.lower()[l - 1], b.lower()[l]));
    out.upper.push_back(diff(b.upper()[l], b.upper()[l - 1]));
  }
  return out;
}

/// Rescale bounds by a positive factor; used to move linearly separable sums
/// onto a per-example (mean) scale.
inline OutputBounds scale_bounds(const OutputBounds& b, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw InvalidParameterError("scale_bounds: factor must be finite and > 0");
  }
  std::vector<ExtendedReal> lower, upper;
  lower.reserve(b.lower().size());
  upper.reserve(b.upper().size());
  const double center = b.center() * factor;
  lower.push_back(center);
  upper.push_back(center);
  for (std::size_t l = 1; l <= b.n(); ++l) {
    lower.push_back(b.lower()[l].value() * factor);
    upper.push_back(b.upper()[l].value() * factor);
  }
  return OutputBounds(center, std::move(lower), std::move(upper));
}

}  // namespace asymdp

#endif  // ASYMDP_BOUNDS_HPP_
