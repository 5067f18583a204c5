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
#ifndef ASYMDP_GRID_HPP_
#define ASYMDP_GRID_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "asymdp/common.hpp"

namespace asymdp {

// Data-independent truncation of the query stream; with beta >= 1.001 the
// geometric ladder exceeds 1e21 within this many steps.
inline constexpr std::size_t kDefaultQueryCap = 50000;

enum class GridKind {
  // t_i = beta^i - 1 for i = 1, 2, ...; for nonnegative-valued functions.
  GeometricNonnegative,
  // t_i = a + beta^i - 1; for functions bounded below by a.
  GeometricShifted,
  // Geometric ladder over the positives, then (only if the first pass halts
  // immediately) the mirrored negatives fed in increasing order.
  TwoPassUnbounded,
  // cap equally spaced points in (a, b]; for functions bounded on both sides.
  Uniform,
};

/// A finite, strictly increasing sequence of candidate outputs, generated
/// lazily per pass. Never yields more than `cap` values per pass; geometric
/// passes additionally stop before the ladder overflows the double range.
class OutputGrid {
 public:
  GridKind kind() const { return kind_; }
  double beta() const { return beta_; }
  std::size_t cap() const { return cap_; }

  std::size_t pass_count() const {
    return kind_ == GridKind::TwoPassUnbounded ? 2 : 1;
  }

  std::size_t pass_size(std::size_t pass) const { return sizes_[pass]; }

  /// i-th value of a pass, 0-based; values within a pass are strictly
  /// increasing.
  double value(std::size_t pass, std::size_t i) const {
    switch (kind_) {
      case GridKind::Uniform:
        return lo_ + (hi_ - lo_) *
                         (static_cast<double>(i + 1) / static_cast<double>(cap_));
      case GridKind::TwoPassUnbounded:
        if (pass == 1) {
          // Negated ladder in decreasing magnitude: ends at -(beta - 1).
          return -(std::pow(beta_, static_cast<double>(sizes_[1] - i)) - 1.0);
        }
        [[fallthrough]];
      default:
        return lo_ + std::pow(beta_, static_cast<double>(i + 1)) - 1.0;
    }
  }

  std::vector<double> values(std::size_t pass) const {
    std::vector<double> out;
    out.reserve(pass_size(pass));
    for (std::size_t i = 0; i < pass_size(pass); ++i) {
      out.push_back(value(pass, i));
    }
    return out;
  }

 private:
  friend OutputGrid make_grid(GridKind, double, std::optional<ValueRange>,
                              std::size_t);

  OutputGrid(GridKind kind, double beta, double lo, double hi, std::size_t cap)
      : kind_(kind), beta_(beta), lo_(lo), hi_(hi), cap_(cap) {
    if (kind_ == GridKind::Uniform) {
      sizes_[0] = cap_;
    } else {
      sizes_[0] = geometric_length(beta_, lo_, cap_);
      sizes_[1] = kind_ == GridKind::TwoPassUnbounded ? sizes_[0] : 0;
    }
  }

  // Largest run length whose final ladder value is still finite.
  static std::size_t geometric_length(double beta, double shift,
                                      std::size_t cap) {
    const double max_exponent =
        std::log(std::numeric_limits<double>::max()) / std::log(beta);
    if (max_exponent >= static_cast<double>(cap)) {
      return cap;
    }
    auto finite_at = [&](std::size_t i) {
      return std::isfinite(shift + std::pow(beta, static_cast<double>(i)) - 1.0);
    };
    std::size_t len = static_cast<std::size_t>(max_exponent);
    while (len > 0 && !finite_at(len)) --len;
    while (len < cap && finite_at(len + 1)) ++len;
    return len;
  }

  GridKind kind_;
  double beta_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::size_t cap_;
  std::size_t sizes_[2] = {0, 0};
};

/// Builds a grid. Geometric kinds require beta > 1; GeometricShifted takes
/// its lower bound from domain->lo; Uniform requires a finite domain.
inline OutputGrid make_grid(GridKind kind, double beta,
                            std::optional<ValueRange> domain = std::nullopt,
                            std::size_t cap = kDefaultQueryCap) {
  if (cap == 0) {
    throw InvalidParameterError("make_grid: cap must be positive");
  }
  double lo = 0.0, hi = 0.0;
  switch (kind) {
    case GridKind::GeometricNonnegative:
    case GridKind::TwoPassUnbounded:
      if (!(beta > 1.0) || !std::isfinite(beta)) {
        throw InvalidParameterError("make_grid: beta must be finite and > 1");
      }
      break;
    case GridKind::GeometricShifted:
      if (!(beta > 1.0) || !std::isfinite(beta)) {
        throw InvalidParameterError("make_grid: beta must be finite and > 1");
      }
      if (!domain.has_value() || !std::isfinite(domain->lo)) {
        throw InvalidParameterError(
            "make_grid: geometric-shifted needs a finite lower domain bound");
      }
      lo = domain->lo;
      break;
    case GridKind::Uniform:
      if (!domain.has_value()) {
        throw InvalidParameterError("make_grid: uniform needs a domain");
      }
      if (!std::isfinite(domain->lo) || !std::isfinite(domain->hi) ||
          !(domain->lo < domain->hi)) {
        throw InvalidParameterError(
            "make_grid: uniform domain must be finite with lo < hi");
      }
      lo = domain->lo;
      hi = domain->hi;
      if (!(lo + (hi - lo) / static_cast<double>(cap) > lo)) {
        throw InvalidParameterError(
            "make_grid: uniform step underflows; reduce cap or widen domain");
      }
      break;
  }
  return OutputGrid(kind, beta, lo, hi, cap);
}

}  // namespace asymdp

#endif  // ASYMDP_GRID_HPP_
