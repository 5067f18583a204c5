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
// Benchmark harness: CSV ingestion, repeated-trial error measurement of the
// two mechanisms, and the asymmetry/error-ratio simulation. Trials are
// independent; each owns a NoiseSource seeded from (seed, epsilon index,
// trial index), so reports are reproducible regardless of the worker count.
#ifndef ASYMDP_BENCH_HPP_
#define ASYMDP_BENCH_HPP_

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "asymdp/bounds.hpp"
#include "asymdp/budget.hpp"
#include "asymdp/common.hpp"
#include "asymdp/grid.hpp"
#include "asymdp/losses.hpp"
#include "asymdp/mechanisms.hpp"
#include "asymdp/noise.hpp"
#include "asymdp/serialization.hpp"
#include "asymdp/variance.hpp"

namespace asymdp {

enum class Task { Variance, Bce, Ce, Mse, Mae };

inline const char* task_name(Task t) {
  switch (t) {
    case Task::Variance: return "variance";
    case Task::Bce: return "bce";
    case Task::Ce: return "ce";
    case Task::Mse: return "mse";
    case Task::Mae: return "mae";
  }
  return "variance";
}

inline Task parse_task(const std::string& s) {
  if (s == "variance") return Task::Variance;
  if (s == "bce") return Task::Bce;
  if (s == "ce") return Task::Ce;
  if (s == "mse") return Task::Mse;
  if (s == "mae") return Task::Mae;
  throw InvalidParameterError("unknown task: " + s);
}

struct ExperimentSpec {
  Task task = Task::Variance;
  std::string input_path;
  std::vector<double> epsilons;
  std::size_t trials = 100;
  std::size_t sample_size = 1000;
  double beta = 1.005;
  // Data range for variance, logit range for bce/ce, value range for
  // mse/mae. Absent means unbounded, which the asymmetric mechanism accepts
  // and the inverse sensitivity mechanism rejects.
  std::optional<ValueRange> range;
  bool run_ism = true;
  bool run_asm = true;
  std::uint64_t seed = 0;
  std::size_t cutoff = 100;
  std::size_t query_cap = kDefaultQueryCap;
  // Non-private debug mode: all noise scales forced to 0.
  bool zero_noise = false;
};

/// Parsed input columns. Variance fills `values`; scalar model tasks fill
/// `predictions` + `labels`; multi-class fills `class_logits` (row-major) +
/// `labels`.
struct Dataset {
  std::vector<double> values;
  std::vector<double> predictions;
  std::vector<double> class_logits;
  std::size_t class_count = 0;
  std::vector<double> labels;

  std::size_t size() const {
    if (!values.empty()) return values.size();
    return labels.size();
  }
};

namespace internal {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

inline std::optional<double> parse_double(const std::string& s) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) return std::nullopt;
  return value;
}

}  // namespace internal

/// Parses the task's CSV layout: one numeric column for variance, `y,p` for
/// scalar model tasks, and `y,p0..p{C-1}` for multi-class. A non-numeric
/// first line is treated as a header.
inline Dataset parse_csv(std::istream& in, Task task) {
  Dataset data;
  std::string line;
  std::size_t line_number = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = internal::split_csv_line(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (const std::string& f : fields) {
      const std::optional<double> v = internal::parse_double(f);
      if (!v.has_value()) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (first_content_line) {
        first_content_line = false;  // header
        continue;
      }
      throw IoError("CSV parse error at line " + std::to_string(line_number));
    }
    first_content_line = false;
    const std::size_t expected_columns =
        task == Task::Variance ? 1 : (task == Task::Ce ? 0 : 2);
    if (expected_columns != 0 && row.size() != expected_columns) {
      throw IoError("CSV invalid column count at line " +
                    std::to_string(line_number) + ": expected " +
                    std::to_string(expected_columns) + ", got " +
                    std::to_string(row.size()));
    }
    switch (task) {
      case Task::Variance:
        data.values.push_back(row[0]);
        break;
      case Task::Ce: {
        if (row.size() < 3) {
          throw IoError("CSV invalid column count at line " +
                        std::to_string(line_number) +
                        ": multi-class needs y plus at least 2 logits");
        }
        if (data.class_count == 0) {
          data.class_count = row.size() - 1;
        } else if (row.size() - 1 != data.class_count) {
          throw IoError("CSV invalid column count at line " +
                        std::to_string(line_number));
        }
        data.labels.push_back(row[0]);
        data.class_logits.insert(data.class_logits.end(), row.begin() + 1,
                                 row.end());
        break;
      }
      default:
        data.labels.push_back(row[0]);
        data.predictions.push_back(row[1]);
        break;
    }
  }
  if (data.size() == 0) {
    throw IoError("CSV contains no data rows");
  }
  return data;
}

inline Dataset load_dataset(const std::string& path, Task task) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open input file: " + path);
  }
  return parse_csv(in, task);
}

struct MechanismRow {
  double epsilon = 0.0;
  Mechanism mechanism = Mechanism::Ism;
  double mean_abs_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> errors;

  bool operator==(const MechanismRow&) const = default;
};

struct TrialReport {
  Task task = Task::Variance;
  std::uint64_t seed = 0;
  double beta = 1.005;
  bool bounded = false;
  std::size_t trials = 0;
  std::size_t sample_size = 0;
  std::vector<MechanismRow> rows;

  bool operator==(const TrialReport&) const = default;
};

namespace internal {

// Linear-interpolation empirical quantile of a sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline MechanismRow summarize(double epsilon, Mechanism mechanism,
                              std::vector<double> errors) {
  MechanismRow row;
  row.epsilon = epsilon;
  row.mechanism = mechanism;
  row.errors = std::move(errors);
  double sum = 0.0;
  for (double e : row.errors) sum += e;
  row.mean_abs_error = sum / static_cast<double>(row.errors.size());
  std::vector<double> sorted = row.errors;
  std::sort(sorted.begin(), sorted.end());
  row.ci_low = quantile_sorted(sorted, 0.05);
  row.ci_high = quantile_sorted(sorted, 0.95);
  return row;
}

// Minimal worker pool; results must be written to pre-sized slots so the
// outcome is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers =
      std::min<std::size_t>(hw == 0 ? 1 : hw, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// First `k` entries of a Fisher-Yates shuffle: a uniform size-k subsample
// without replacement.
inline std::vector<std::size_t> subsample_indices(NoiseSource& rng,
                                                  std::size_t n,
                                                  std::size_t k) {
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  return indices;
}

// Per-trial working set: the true (non-private) statistic, bounds for each
// mechanism, the candidate grid, and the stream monotonicity.
struct TrialKit {
  double truth = 0.0;
  std::optional<OutputBounds> asm_bounds;
  std::optional<OutputBounds> ism_bounds;
  std::optional<OutputGrid> grid;
  bool monotone = false;
};

inline TrialKit build_trial_kit(const ExperimentSpec& spec,
                                const Dataset& data,
                                const std::vector<std::size_t>& indices) {
  TrialKit kit;
  const std::size_t m = indices.size();
  if (spec.task == Task::Variance) {
    std::vector<double> values;
    values.reserve(m);
    for (std::size_t i : indices) values.push_back(data.values[i]);
    kit.truth = variance(values);
    VarianceConfig config{spec.cutoff, spec.range, spec.beta, spec.query_cap};
    kit.asm_bounds = variance_output_bounds(values, config);
    if (spec.run_ism) kit.ism_bounds = kit.asm_bounds;
    kit.monotone = false;
  } else {
    ModelEvalInput input;
    input.output_range = spec.range;
    input.labels.reserve(m);
    for (std::size_t i : indices) input.labels.push_back(data.labels[i]);
    if (spec.task == Task::Ce) {
      input.class_count = data.class_count;
      input.class_logits.reserve(m * data.class_count);
      for (std::size_t i : indices) {
        const double* row = data.class_logits.data() + i * data.class_count;
        input.class_logits.insert(input.class_logits.end(), row,
                                  row + data.class_count);
      }
    } else {
      input.predictions.reserve(m);
      for (std::size_t i : indices) {
        input.predictions.push_back(data.predictions[i]);
      }
    }
    PerItemLosses losses;
    double scale = 1.0;
    switch (spec.task) {
      case Task::Bce: losses = bce_losses(input); break;
      case Task::Ce: losses = ce_losses(input); break;
      case Task::Mse:
        losses = mse_mae_losses(input, RegressionMetric::Mse);
        scale = 1.0 / static_cast<double>(m);
        break;
      default:
        losses = mse_mae_losses(input, RegressionMetric::Mae);
        scale = 1.0 / static_cast<double>(m);
        break;
    }
    double total = 0.0;
    for (double l : losses.losses) total += l;
    kit.truth = total * scale;
    OutputBounds asm_bounds = linsep_bounds(losses, spec.cutoff);
    if (scale != 1.0) {
      asm_bounds = scale_bounds(asm_bounds, scale);
    }
    kit.asm_bounds = std::move(asm_bounds);
    if (spec.run_ism) {
      // The baseline needs every upper bound finite, so it gets the
      // untruncated (still one sort plus prefix sums) sequences.
      OutputBounds ism_bounds = linsep_bounds(losses, losses.losses.size());
      if (scale != 1.0) {
        ism_bounds = scale_bounds(ism_bounds, scale);
      }
      kit.ism_bounds = std::move(ism_bounds);
    }
    kit.monotone = true;
  }
  kit.grid = make_grid(GridKind::GeometricNonnegative, spec.beta, std::nullopt,
                       spec.query_cap);
  return kit;
}

}  // namespace internal

inline void validate_spec(const ExperimentSpec& spec, std::size_t data_size) {
  if (spec.epsilons.empty()) {
    throw InvalidParameterError("experiment needs at least one epsilon");
  }
  for (double e : spec.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw InvalidParameterError("epsilons must be finite and positive");
    }
  }
  if (spec.trials == 0) {
    throw InvalidParameterError("trials must be at least 1");
  }
  if (!spec.run_ism && !spec.run_asm) {
    throw InvalidParameterError("select at least one mechanism");
  }
  if (spec.sample_size == 0 || spec.sample_size > data_size) {
    throw InvalidParameterError(
        "sample size must be in [1, dataset size]; dataset has " +
        std::to_string(data_size) + " rows");
  }
  if (!(spec.beta > 1.0) || !std::isfinite(spec.beta)) {
    throw InvalidParameterError("beta must be finite and > 1");
  }
  if (spec.run_ism && !spec.range.has_value()) {
    throw UnboundedDomainError(
        "the inverse sensitivity mechanism needs a --range restriction; "
        "drop it from --mechanisms or provide a range");
  }
  if (spec.range.has_value()) {
    checked_range(spec.range->lo, spec.range->hi);
  }
}

/// Runs the repeated-trial protocol: per (epsilon, trial), subsample
/// `sample_size` rows without replacement, compute the true statistic on the
/// subsample, run each selected mechanism on it, and record the absolute
/// error. Rows are summarized with the mean and the empirical 5th/95th
/// percentiles.
inline TrialReport run_experiment(const ExperimentSpec& spec,
                                  const Dataset& data) {
  validate_spec(spec, data.size());
  TrialReport report;
  report.task = spec.task;
  report.seed = spec.seed;
  report.beta = spec.beta;
  report.bounded = spec.range.has_value();
  report.trials = spec.trials;
  report.sample_size = spec.sample_size;
  for (std::size_t ei = 0; ei < spec.epsilons.size(); ++ei) {
    const double epsilon = spec.epsilons[ei];
    std::vector<double> ism_errors(spec.trials, 0.0);
    std::vector<double> asm_errors(spec.trials, 0.0);
    internal::parallel_for(spec.trials, [&](std::size_t trial) {
      NoiseSource rng(derive_seed(spec.seed, ei, trial));
      const std::vector<std::size_t> indices =
          internal::subsample_indices(rng, data.size(), spec.sample_size);
      const internal::TrialKit kit =
          internal::build_trial_kit(spec, data, indices);
      if (spec.run_ism) {
        const double ism_epsilon =
            spec.zero_noise ? std::numeric_limits<double>::infinity()
                            : epsilon;
        const MechanismResult r =
            ism_sample(*kit.ism_bounds, ism_epsilon, rng);
        ism_errors[trial] = std::abs(r.estimate - kit.truth);
      }
      if (spec.run_asm) {
        const PrivacyBudget budget =
            spec.zero_noise ? PrivacyBudget::zero_noise(kit.monotone)
                            : PrivacyBudget::split(epsilon, kit.monotone);
        const MechanismResult r =
            asm_select(*kit.asm_bounds, *kit.grid, budget, rng);
        asm_errors[trial] = std::abs(r.estimate - kit.truth);
      }
    });
    if (spec.run_ism) {
      report.rows.push_back(
          internal::summarize(epsilon, Mechanism::Ism, std::move(ism_errors)));
    }
    if (spec.run_asm) {
      report.rows.push_back(
          internal::summarize(epsilon, Mechanism::Asm, std::move(asm_errors)));
    }
  }
  return report;
}

inline TrialReport run_experiment(const ExperimentSpec& spec) {
  return run_experiment(spec, load_dataset(spec.input_path, spec.task));
}

// ---------------------------------------------------------------------------
// Asymmetry simulation
// ---------------------------------------------------------------------------

struct SimRow {
  double asymmetry = 0.0;
  double error_ratio = 0.0;  // mean |ISM error| / mean |ASM error|
  double epsilon = 0.0;

  bool operator==(const SimRow&) const = default;
};

struct SimReport {
  std::uint64_t seed = 0;
  std::vector<SimRow> rows;

  bool operator==(const SimReport&) const = default;
};

struct SimulationConfig {
  std::size_t rows = 500;
  std::vector<double> epsilons{0.1, 0.25, 0.5, 1.0, 2.0};
  std::uint64_t seed = 0;
  std::size_t draws = 32;       // mechanism calls per sampled bounds
  std::size_t levels = 40;      // bound steps per side
  std::size_t grid_cap = 1024;  // uniform candidate grid resolution
};

namespace internal {

// Random bounds generator for the simulation. Lower increments are uniform
// at unit scale; upper increments are uniform or Pareto(alpha=2, mean 1) at
// a toggled scale, which sweeps the asymmetry from near 0 to near 1/2.
inline OutputBounds simulate_bounds(NoiseSource& rng, std::size_t levels,
                                    double upper_scale, bool heavy_tailed) {
  std::vector<ExtendedReal> lower{0.0}, upper{0.0};
  for (std::size_t l = 0; l < levels; ++l) {
    lower.push_back(lower.back().value() - rng.uniform01());
    const double increment =
        heavy_tailed ? 0.5 / std::sqrt(rng.uniform01()) : rng.uniform01();
    upper.push_back(upper.back().value() + upper_scale * increment);
  }
  return OutputBounds(0.0, std::move(lower), std::move(upper));
}

inline double mean_abs_estimate_error(const OutputBounds& bounds,
                                      double epsilon, std::size_t draws,
                                      std::size_t grid_cap, Mechanism which,
                                      NoiseSource& rng) {
  double total = 0.0;
  const OutputGrid grid = make_grid(
      GridKind::Uniform, 1.0,
      ValueRange{bounds.lower().back().value(), bounds.upper().back().value()},
      grid_cap);
  for (std::size_t d = 0; d < draws; ++d) {
    const double estimate =
        which == Mechanism::Ism
            ? ism_sample(bounds, epsilon, rng).estimate
            : asm_select(bounds, grid, PrivacyBudget::split(epsilon, false),
                         rng)
                  .estimate;
    total += std::abs(estimate - bounds.center());
  }
  return total / static_cast<double>(draws);
}

}  // namespace internal

/// Draws random output bounds at varying asymmetry, measures each
/// mechanism's mean absolute error over a few calls, and emits
/// (asymmetry, ISM error / ASM error, epsilon) rows. When `sampled_bounds`
/// is given it receives the generated bounds, one per row.
inline SimReport simulate_asymmetry(
    const SimulationConfig& config,
    std::vector<OutputBounds>* sampled_bounds = nullptr) {
  if (config.rows == 0 || config.draws == 0 || config.levels == 0) {
    throw InvalidParameterError(
        "simulate_asymmetry: rows, draws, and levels must be positive");
  }
  if (config.epsilons.empty()) {
    throw InvalidParameterError("simulate_asymmetry: needs epsilons");
  }
  for (double e : config.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw InvalidParameterError("epsilons must be finite and positive");
    }
  }
  static constexpr double kUpperScales[] = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  SimReport report;
  report.seed = config.seed;
  report.rows.resize(config.rows);
  std::vector<std::optional<OutputBounds>> kept;
  if (sampled_bounds != nullptr) kept.resize(config.rows);
  internal::parallel_for(config.rows, [&](std::size_t r) {
    NoiseSource rng(derive_seed(config.seed, 0x51u, r));
    const double upper_scale = kUpperScales[r % 6];
    const bool heavy_tailed = (r / 6) % 2 == 1;
    const double epsilon = config.epsilons[r % config.epsilons.size()];
    const OutputBounds bounds =
        internal::simulate_bounds(rng, config.levels, upper_scale,
                                  heavy_tailed);
    SimRow row;
    row.epsilon = epsilon;
    row.asymmetry = asymmetry(bounds, epsilon);
    const double ism_error = internal::mean_abs_estimate_error(
        bounds, epsilon, config.draws, config.grid_cap, Mechanism::Ism, rng);
    const double asm_error = internal::mean_abs_estimate_error(
        bounds, epsilon, config.draws, config.grid_cap, Mechanism::Asm, rng);
    row.error_ratio = ism_error / asm_error;
    report.rows[r] = row;
    if (sampled_bounds != nullptr) kept[r] = bounds;
  });
  if (sampled_bounds != nullptr) {
    sampled_bounds->clear();
    sampled_bounds->reserve(config.rows);
    for (auto& b : kept) sampled_bounds->push_back(std::move(*b));
  }
  return report;
}

/// Same measurement over caller-provided bounds (one row per bounds/epsilon
/// pair); lets the CLI replay serialized bounds instead of sampling them.
inline SimReport simulate_asymmetry_on(const std::vector<OutputBounds>& bounds,
                                       const SimulationConfig& config) {
  if (bounds.empty()) {
    throw InvalidParameterError("simulate_asymmetry_on: no bounds given");
  }
  SimReport report;
  report.seed = config.seed;
  report.rows.resize(bounds.size() * config.epsilons.size());
  internal::parallel_for(report.rows.size(), [&](std::size_t r) {
    NoiseSource rng(derive_seed(config.seed, 0x52u, r));
    const OutputBounds& b = bounds[r / config.epsilons.size()];
    const double epsilon = config.epsilons[r % config.epsilons.size()];
    SimRow row;
    row.epsilon = epsilon;
    row.asymmetry = asymmetry(b, epsilon);
    const double ism_error = internal::mean_abs_estimate_error(
        b, epsilon, config.draws, config.grid_cap, Mechanism::Ism, rng);
    const double asm_error = internal::mean_abs_estimate_error(
        b, epsilon, config.draws, config.grid_cap, Mechanism::Asm, rng);
    row.error_ratio = ism_error / asm_error;
    report.rows[r] = row;
  });
  return report;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

enum class EmitFormat { Csv, Json };

inline EmitFormat parse_format(const std::string& s) {
  if (s == "csv") return EmitFormat::Csv;
  if (s == "json") return EmitFormat::Json;
  throw InvalidParameterError("unknown format: " + s);
}

inline void to_json(nlohmann::json& j, const MechanismRow& row) {
  j = nlohmann::json{{"epsilon", row.epsilon},
                     {"mechanism", mechanism_name(row.mechanism)},
                     {"mean_abs_error", row.mean_abs_error},
                     {"ci_low", row.ci_low},
                     {"ci_high", row.ci_high},
                     {"errors", row.errors}};
}

inline void from_json(const nlohmann::json& j, MechanismRow& row) {
  j.at("epsilon").get_to(row.epsilon);
  row.mechanism = parse_mechanism(j.at("mechanism").get<std::string>());
  j.at("mean_abs_error").get_to(row.mean_abs_error);
  j.at("ci_low").get_to(row.ci_low);
  j.at("ci_high").get_to(row.ci_high);
  j.at("errors").get_to(row.errors);
}

inline void to_json(nlohmann::json& j, const TrialReport& report) {
  j = nlohmann::json{{"task", task_name(report.task)},
                     {"seed", report.seed},
                     {"beta", report.beta},
                     {"bounded", report.bounded},
                     {"trials", report.trials},
                     {"sample_size", report.sample_size},
                     {"rows", report.rows}};
}

inline void from_json(const nlohmann::json& j, TrialReport& report) {
  report.task = parse_task(j.at("task").get<std::string>());
  j.at("seed").get_to(report.seed);
  j.at("beta").get_to(report.beta);
  j.at("bounded").get_to(report.bounded);
  j.at("trials").get_to(report.trials);
  j.at("sample_size").get_to(report.sample_size);
  j.at("rows").get_to(report.rows);
}

inline void to_json(nlohmann::json& j, const SimRow& row) {
  j = nlohmann::json{{"asymmetry", row.asymmetry},
                     {"error_ratio", row.error_ratio},
                     {"epsilon", row.epsilon}};
}

inline void from_json(const nlohmann::json& j, SimRow& row) {
  j.at("asymmetry").get_to(row.asymmetry);
  j.at("error_ratio").get_to(row.error_ratio);
  j.at("epsilon").get_to(row.epsilon);
}

inline void to_json(nlohmann::json& j, const SimReport& report) {
  j = nlohmann::json{{"seed", report.seed}, {"rows", report.rows}};
}

inline void from_json(const nlohmann::json& j, SimReport& report) {
  j.at("seed").get_to(report.seed);
  j.at("rows").get_to(report.rows);
}

namespace internal {

inline void write_double(std::ostream& out, double v) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  out.write(buffer, ptr - buffer);
}

}  // namespace internal

/// CSV emission with the stable column order
/// task,epsilon,mechanism,mean_abs_error,ci_low,ci_high,trials,beta,bounded,seed.
inline void emit(const TrialReport& report, EmitFormat format,
                 std::ostream& out) {
  if (format == EmitFormat::Json) {
    const nlohmann::json j = report;
    out << j.dump(2) << '\n';
    return;
  }
  out << "task,epsilon,mechanism,mean_abs_error,ci_low,ci_high,trials,beta,"
         "bounded,seed\n";
  for (const MechanismRow& row : report.rows) {
    out << task_name(report.task) << ',';
    internal::write_double(out, row.epsilon);
    out << ',' << mechanism_name(row.mechanism) << ',';
    internal::write_double(out, row.mean_abs_error);
    out << ',';
    internal::write_double(out, row.ci_low);
    out << ',';
    internal::write_double(out, row.ci_high);
    out << ',' << report.trials << ',';
    internal::write_double(out, report.beta);
    out << ',' << (report.bounded ? "true" : "false") << ',' << report.seed
        << '\n';
  }
}

inline void emit(const SimReport& report, EmitFormat format,
                 std::ostream& out) {
  if (format == EmitFormat::Json) {
    const nlohmann::json j = report;
    out << j.dump(2) << '\n';
    return;
  }
  out << "asymmetry,error_ratio,epsilon\n";
  for (const SimRow& row : report.rows) {
    internal::write_double(out, row.asymmetry);
    out << ',';
    internal::write_double(out, row.error_ratio);
    out << ',';
    internal::write_double(out, row.epsilon);
    out << '\n';
  }
}

template <typename Report>
void emit_to_file(const Report& report, EmitFormat format,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open output file: " + path);
  }
  emit(report, format, out);
  out.flush();
  if (!out) {
    throw IoError("failed writing output file: " + path);
  }
}

}  // namespace asymdp

#endif  // ASYMDP_BENCH_HPP_
