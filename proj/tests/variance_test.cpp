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
#include "asymdp/variance.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

#include "asymdp/oracles.hpp"
#include "test_util.hpp"

namespace asymdp {
namespace {

TEST_CASE("variance of constant data is zero") {
  const std::vector<double> v{1.0, 1.0, 1.0};
  CHECK(variance(v) == 0.0);
}

TEST_CASE("variance matches hand computation") {
  const std::vector<double> v{0.0, 1.0, 2.0};
  CHECK(variance(v) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(variance(std::vector<double>{}), InvalidParameterError);
}

TEST_CASE("variance agrees with the pairwise form") {
  NoiseSource rng(1);
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(rng.uniform(-5.0, 5.0) * 3.0);
  double pairwise = 0.0;
  for (double a : v) {
    for (double b : v) {
      pairwise += 0.5 * (a - b) * (a - b);
    }
  }
  pairwise /= static_cast<double>(v.size()) * static_cast<double>(v.size());
  CHECK(variance(v) == doctest::Approx(pairwise).epsilon(1e-9));
}

TEST_CASE("lower bounds on a sorted triple") {
  const std::vector<double> v{0.0, 1.0, 2.0};
  VarianceConfig config;
  config.cutoff = 3;
  const std::vector<double> bounds = variance_lower_bounds(v, config);
  REQUIRE(bounds.size() == 4);
  CHECK(bounds[0] == doctest::Approx(2.0 / 3.0));
  CHECK(bounds[1] == doctest::Approx(1.0 / 6.0));
  CHECK(bounds[3] == 0.0);
}

TEST_CASE("lower bounds beyond the cutoff relax to zero") {
  const std::vector<double> v{0.0, 1.0, 2.0, 3.0, 4.0};
  VarianceConfig config;
  config.cutoff = 2;
  const std::vector<double> bounds = variance_lower_bounds(v, config);
  CHECK(bounds[2] > 0.0);
  CHECK(bounds[3] == 0.0);
  CHECK(bounds[4] == 0.0);
  CHECK(bounds[5] == 0.0);
}

TEST_CASE("exact lower bounds equal subset enumeration") {
  NoiseSource rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(8);
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(rng.uniform(-5.0, 5.0));
    VarianceConfig config;
    config.cutoff = n;
    const std::vector<double> bounds = variance_lower_bounds(v, config);
    for (std::size_t l = 0; l <= n; ++l) {
      const double expected = brute_variance_lower(v, l);
      CHECK(std::abs(bounds[l] - expected) <= 1e-9);
    }
  }
}

TEST_CASE("upper bounds follow the range formula") {
  // Var = 2 comes from scaling {0,2} appropriately is awkward; instead build
  // n = 100 data with known variance and check the formula shape directly.
  std::vector<double> v(100, 5.0);
  v[0] = 1.0;
  v[1] = 9.0;
  const double var = variance(v);
  VarianceConfig config;
  config.range = ValueRange{0.0, 10.0};
  const std::vector<ExtendedReal> bounds = variance_upper_bounds(v, config);
  CHECK(bounds[0] == var);
  CHECK(bounds[3].value() == doctest::Approx(var + 3.0 * 100.0 / 100.0));
  CHECK(bounds[100].value() == doctest::Approx(var + 100.0));
}

TEST_CASE("upper bounds without a range are infinite from level one") {
  const std::vector<double> v{1.0, 2.0, 3.0};
  const std::vector<ExtendedReal> bounds =
      variance_upper_bounds(v, VarianceConfig{});
  CHECK(bounds[0] == variance(v));
  CHECK(bounds[1] == ExtendedReal::infinity());
  CHECK(bounds[3] == ExtendedReal::infinity());
}

TEST_CASE("values outside the declared range are rejected") {
  const std::vector<double> v{1.0, 2.0, 30.0};
  VarianceConfig config;
  config.range = ValueRange{0.0, 10.0};
  CHECK_THROWS_AS(variance_upper_bounds(v, config), InvalidParameterError);
  CHECK_THROWS_AS(variance_output_bounds(v, config), InvalidParameterError);
}

TEST_CASE("assembled bounds satisfy the stored invariants at scale") {
  NoiseSource rng(9);
  std::vector<double> v;
  for (int i = 0; i < 5000; ++i) v.push_back(rng.uniform(0.0, 50.0));
  VarianceConfig config;
  config.range = ValueRange{0.0, 50.0};
  const OutputBounds bounds = variance_output_bounds(v, config);
  CHECK(bounds.n() == v.size());
  CHECK(bounds.center() == doctest::Approx(variance(v)));
  // Construction validates monotonicity; spot-check the truncation tail.
  CHECK(bounds.lower()[config.cutoff + 1] == 0.0);
  CHECK(bounds.lower()[v.size()] == 0.0);
}

TEST_CASE("variance estimator under zero noise lands one grid step past Var") {
  NoiseSource data_rng(123);
  const std::vector<double> v = testing::lognormal_sample(data_rng, 1000);
  VarianceConfig config;
  const Estimator est = build_variance_estimator(v, config, 1.0);
  CHECK(!est.budget.monotone());
  CHECK(est.budget.total() == doctest::Approx(1.0));
  NoiseSource rng(5);
  const MechanismResult r =
      asm_select(est.bounds, est.grid, PrivacyBudget::zero_noise(false), rng);
  const ScanOutcome scan = zero_noise_scan(est.bounds, est.grid);
  CHECK(r.estimate == scan.estimate);
  // The zero-noise halt is the first ladder value at or above the variance.
  const double var = variance(v);
  CHECK(r.estimate >= var);
  CHECK(r.estimate <= var * config.beta + config.beta);
}

TEST_CASE("constant data estimate stays within one grid step of zero") {
  const std::vector<double> v(500, 3.0);
  const Estimator est = build_variance_estimator(v, VarianceConfig{}, 1.0);
  NoiseSource rng(5);
  const MechanismResult r =
      asm_select(est.bounds, est.grid, PrivacyBudget::zero_noise(false), rng);
  CHECK(r.estimate == doctest::Approx(0.005).epsilon(1e-9));  // beta - 1
}

TEST_CASE("geometric grid for variance respects the query cap") {
  const Estimator est = build_variance_estimator(
      std::vector<double>{1.0, 2.0}, VarianceConfig{}, 1.0);
  CHECK(est.grid.pass_size(0) <= 50000);
}

}  // namespace
}  // namespace asymdp
