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
#ifndef ASYMDP_LOSSES_HPP_
#define ASYMDP_LOSSES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
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

/// Per-item losses of a linearly separable function f(x) = sum_i loss(x_i),
/// with caller-asserted bounds: inf_loss is at most any loss the data
/// universe can produce, sup_loss at least any (possibly +infinity for
/// unrestricted model outputs).
struct PerItemLosses {
  std::vector<double> losses;
  double inf_loss = 0.0;
  ExtendedReal sup_loss = ExtendedReal::infinity();
};

/// Model outputs and labels for the evaluation metrics. Scalar tasks
/// (binary classification, regression) fill `predictions`; multi-class
/// fills `class_logits` (row-major, n rows of class_count entries). The
/// optional range restricts each prediction coordinate (and, for
/// regression, the labels too); it is what makes the sup_loss finite.
struct ModelEvalInput {
  std::vector<double> predictions;
  std::vector<double> class_logits;
  std::size_t class_count = 0;
  std::vector<double> labels;
  std::optional<ValueRange> output_range;
};

enum class RegressionMetric { Mse, Mae };

namespace internal {

// log(1 + e^z) without overflow.
inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline void check_in_range(double v, const ValueRange& range,
                           const char* what) {
  if (!range.contains(v)) {
    throw InvalidParameterError(std::string(what) +
                                " outside the declared range; clipping is the "
                                "caller's responsibility");
  }
}

}  // namespace internal

/// Binary cross-entropy per-item losses from logits. Stable log-sum-exp
/// form; with logits restricted to [a, b] the per-item supremum is
/// log(1 + e^max(|a|, |b|)), attained at the wrong-label extreme.
inline PerItemLosses bce_losses(const ModelEvalInput& input) {
  if (input.predictions.size() != input.labels.size() ||
      input.predictions.empty()) {
    throw InvalidParameterError(
        "bce_losses: predictions and labels must be nonempty and equal-sized");
  }
  if (input.output_range.has_value()) {
    checked_range(input.output_range->lo, input.output_range->hi);
  }
  PerItemLosses out;
  out.losses.reserve(input.predictions.size());
  for (std::size_t i = 0; i < input.predictions.size(); ++i) {
    const double logit = input.predictions[i];
    const double label = input.labels[i];
    if (label != 0.0 && label != 1.0) {
      throw InvalidParameterError("bce_losses: labels must be 0 or 1");
    }
    if (input.output_range.has_value()) {
      internal::check_in_range(logit, *input.output_range, "bce_losses: logit");
    }
    out.losses.push_back(label == 1.0 ? internal::softplus(-logit)
                                      : internal::softplus(logit));
  }
  out.inf_loss = 0.0;
  out.sup_loss =
      input.output_range.has_value()
          ? ExtendedReal(internal::softplus(std::max(
                std::abs(input.output_range->lo), std::abs(input.output_range->hi))))
          : ExtendedReal::infinity();
  return out;
}

/// Multi-class cross-entropy per-item losses from logit vectors. With every
/// logit restricted to [a, b], the per-item supremum is
/// -log(e^{a-b} / (e^{a-b} + C - 1)).
inline PerItemLosses ce_losses(const ModelEvalInput& input) {
  const std::size_t classes = input.class_count;
  if (classes < 2) {
    throw InvalidParameterError("ce_losses: need at least 2 classes");
  }
  const std::size_t n = input.labels.size();
  if (n == 0 || input.class_logits.size() != n * classes) {
    throw InvalidParameterError(
        "ce_losses: class_logits must hold labels.size() rows of class_count "
        "logits");
  }
  if (input.output_range.has_value()) {
    checked_range(input.output_range->lo, input.output_range->hi);
  }
  PerItemLosses out;
  out.losses.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double label = input.labels[i];
    const auto label_index = static_cast<std::size_t>(label);
    if (label != std::floor(label) || label < 0.0 ||
        label_index >= classes) {
      throw InvalidParameterError(
          "ce_losses: labels must be class indices in [0, class_count)");
    }
    const double* row = input.class_logits.data() + i * classes;
    double max_logit = row[0];
    for (std::size_t j = 1; j < classes; ++j) {
      max_logit = std::max(max_logit, row[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < classes; ++j) {
      if (input.output_range.has_value()) {
        internal::check_in_range(row[j], *input.output_range,
                                 "ce_losses: logit");
      }
      sum += std::exp(row[j] - max_logit);
    }
    out.losses.push_back(max_logit + std::log(sum) - row[label_index]);
  }
  out.inf_loss = 0.0;
  if (input.output_range.has_value()) {
    const double d = input.output_range->lo - input.output_range->hi;  // <= 0
    out.sup_loss = std::log(std::exp(d) + static_cast<double>(classes - 1)) - d;
  } else {
    out.sup_loss = ExtendedReal::infinity();
  }
  return out;
}

/// Squared or absolute per-item errors. With predictions and labels both
/// restricted to [a, b], the per-item supremum is (b-a)^2 or (b-a).
inline PerItemLosses mse_mae_losses(const ModelEvalInput& input,
                                    RegressionMetric metric) {
  if (input.predictions.size() != input.labels.size() ||
      input.predictions.empty()) {
    throw InvalidParameterError(
        "mse_mae_losses: predictions and labels must be nonempty and "
        "equal-sized");
  }
  if (input.output_range.has_value()) {
    checked_range(input.output_range->lo, input.output_range->hi);
  }
  PerItemLosses out;
  out.losses.reserve(input.predictions.size());
  for (std::size_t i = 0; i < input.predictions.size(); ++i) {
    const double pred = input.predictions[i];
    const double label = input.labels[i];
    if (input.output_range.has_value()) {
      internal::check_in_range(pred, *input.output_range,
                               "mse_mae_losses: prediction");
      internal::check_in_range(label, *input.output_range,
                               "mse_mae_losses: label");
    }
    const double diff = pred - label;
    out.losses.push_back(metric == RegressionMetric::Mse ? diff * diff
                                                         : std::abs(diff));
  }
  out.inf_loss = 0.0;
  if (input.output_range.has_value()) {
    const double width = input.output_range->hi - input.output_range->lo;
    out.sup_loss = metric == RegressionMetric::Mse ? width * width : width;
  } else {
    out.sup_loss = ExtendedReal::infinity();
  }
  return out;
}

/// Output bounds of a linearly separable function from its per-item losses,
/// on the sum scale. One ascending sort, then prefix sums:
///   L^l = sum of the n-l smallest losses + l * inf_loss,
///   U^l = sum of the n-l largest losses + l * sup_loss.
/// Beyond the cutoff the tails relax to n * inf_loss and +infinity, keeping
/// assembly O(n log n) total and the far bounds harmless.
inline OutputBounds linsep_bounds(const PerItemLosses& items,
                                  std::size_t cutoff) {
  const std::size_t n = items.losses.size();
  if (n == 0) {
    throw InvalidParameterError("linsep_bounds: losses must be nonempty");
  }
  if (!std::isfinite(items.inf_loss)) {
    throw InvalidParameterError("linsep_bounds: inf_loss must be finite");
  }
  std::vector<double> sorted(items.losses.begin(), items.losses.end());
  std::sort(sorted.begin(), sorted.end());
  const double tolerance =
      1e-9 * std::max(1.0, std::max(std::abs(sorted.front()),
                                    std::abs(sorted.back())));
  if (sorted.front() < items.inf_loss - tolerance ||
      (items.sup_loss.finite() &&
       sorted.back() > items.sup_loss.value() + tolerance)) {
    throw InvalidParameterError(
        "linsep_bounds: losses must lie within [inf_loss, sup_loss]");
  }
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + sorted[i];
  }
  const double total = prefix[n];
  const std::size_t c = std::min(cutoff, n);

  std::vector<ExtendedReal> lower, upper;
  lower.reserve(n + 1);
  upper.reserve(n + 1);
  lower.push_back(total);
  upper.push_back(total);
  const double lower_tail = static_cast<double>(n) * items.inf_loss;
  for (std::size_t l = 1; l <= n; ++l) {
    if (l <= c) {
      const double lo =
          prefix[n - l] + static_cast<double>(l) * items.inf_loss;
      lower.push_back(std::min(lower.back(), ExtendedReal(lo)));
      if (items.sup_loss.finite()) {
        const double hi = (total - prefix[l]) +
                          static_cast<double>(l) * items.sup_loss.value();
        upper.push_back(std::max(upper.back(), ExtendedReal(hi)));
      } else {
        upper.push_back(ExtendedReal::infinity());
      }
    } else {
      lower.push_back(std::min(lower.back(), ExtendedReal(lower_tail)));
      upper.push_back(ExtendedReal::infinity());
    }
  }
  return OutputBounds(total, std::move(lower), std::move(upper));
}

struct LossConfig {
  std::size_t cutoff = 100;
  double beta = 1.005;
  std::size_t query_cap = kDefaultQueryCap;
  // Final rescale of the assembled bounds; regression metrics pass 1/n so
  // candidates live on the mean scale their definitions use.
  double output_scale = 1.0;
};

/// Loss estimator: linearly separable bounds, the nonnegative geometric
/// candidate grid, and a monotone budget split (these losses shift
/// one-sidedly between neighbors, halving the per-query cost).
inline Estimator build_loss_estimator(const PerItemLosses& items,
                                      const LossConfig& config,
                                      double total_epsilon) {
  if (items.inf_loss < 0.0) {
    throw InvalidParameterError(
        "build_loss_estimator: expects nonnegative losses (the geometric "
        "grid starts at 0)");
  }
  OutputBounds bounds = linsep_bounds(items, config.cutoff);
  if (config.output_scale != 1.0) {
    bounds = scale_bounds(bounds, config.output_scale);
  }
  return Estimator{
      std::move(bounds),
      make_grid(GridKind::GeometricNonnegative, config.beta, std::nullopt,
                config.query_cap),
      PrivacyBudget::split(total_epsilon, /*monotone=*/true),
  };
}

}  // namespace asymdp

#endif  // ASYMDP_LOSSES_HPP_
