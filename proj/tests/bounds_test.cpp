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
#include "asymdp/bounds.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"

#include "asymdp/oracles.hpp"
#include "asymdp/serialization.hpp"
#include "test_util.hpp"

namespace asymdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

OutputBounds example_bounds() {
  // n = 2: L = [5, 4, 3], U = [5, 7, 9].
  return OutputBounds(5.0, {5.0, 4.0, 3.0}, {5.0, 7.0, 9.0});
}

TEST_CASE("ExtendedReal rejects NaN and orders infinities") {
  CHECK_THROWS_AS(ExtendedReal(std::numeric_limits<double>::quiet_NaN()),
                  InvalidParameterError);
  CHECK(ExtendedReal::neg_infinity() < ExtendedReal(0.0));
  CHECK(ExtendedReal(0.0) < ExtendedReal::infinity());
  CHECK(!ExtendedReal::infinity().finite());
  CHECK(ExtendedReal(1.5).finite());
}

TEST_CASE("OutputBounds validates its invariants") {
  CHECK_THROWS_AS(OutputBounds(1.0, {2.0}, {2.0}), InvalidParameterError);
  CHECK_THROWS_AS(OutputBounds(1.0, {1.0, 2.0}, {1.0, 2.0}),
                  InvalidParameterError);  // lower increases
  CHECK_THROWS_AS(OutputBounds(1.0, {1.0, 0.0}, {1.0, 0.5}),
                  InvalidParameterError);  // upper decreases
  CHECK_THROWS_AS(OutputBounds(kInf, {kInf}, {kInf}), InvalidParameterError);
  CHECK_THROWS_AS(OutputBounds(1.0, {1.0, 0.0}, {1.0}),
                  InvalidParameterError);  // length mismatch
  CHECK_NOTHROW(OutputBounds(1.0, {1.0, 1.0, 0.0}, {1.0, 1.0, kInf}));
}

TEST_CASE("inverse sensitivity at the center is zero") {
  CHECK(inverse_sensitivity(example_bounds(), 5.0) == 0);
}

TEST_CASE("inverse sensitivity finds the smallest covering level") {
  const OutputBounds b = example_bounds();
  CHECK(inverse_sensitivity(b, 3.5) == 2);
  CHECK(inverse_sensitivity(b, 4.0) == 1);
  CHECK(inverse_sensitivity(b, 6.0) == 1);
  CHECK(inverse_sensitivity(b, 8.0) == 2);
  CHECK(!inverse_sensitivity(b, 100.0).has_value());
  CHECK(!inverse_sensitivity(b, 2.9).has_value());
}

TEST_CASE("binary search equals the linear scan on random bounds") {
  NoiseSource rng(314);
  for (int trial = 0; trial < 500; ++trial) {
    testing::RandomBoundsOptions opts;
    opts.max_n = 12;
    opts.infinite_upper_prob = 0.3;
    const OutputBounds b = testing::random_bounds(rng, opts);
    for (int k = 0; k < 40; ++k) {
      const double t = rng.uniform(-40.0, 40.0);
      CHECK(inverse_sensitivity(b, t) == len_by_scan(b, t));
    }
  }
}

TEST_CASE("cursor scanner matches one-shot reflective values") {
  NoiseSource rng(9090);
  testing::RandomBoundsOptions opts;
  opts.max_n = 12;
  opts.infinite_upper_prob = 0.3;
  for (int trial = 0; trial < 300; ++trial) {
    const OutputBounds b = testing::random_bounds(rng, opts);
    ReflectiveScanner scanner(b);
    double t = -45.0;
    for (int k = 0; k < 60; ++k) {
      t += rng.uniform(0.0, 1.6);
      CHECK(scanner(t) == reflective_inverse_sensitivity(b, t));
    }
  }
}

TEST_CASE("reflective value at the center is exactly zero") {
  CHECK(reflective_inverse_sensitivity(example_bounds(), 5.0) == 0.0);
}

TEST_CASE("reflective values carry sign and half-shift") {
  const OutputBounds b = example_bounds();
  CHECK(reflective_inverse_sensitivity(b, 6.0) == 0.5);
  CHECK(reflective_inverse_sensitivity(b, 3.5) == -1.5);
  CHECK(reflective_inverse_sensitivity(b, 100.0) == kInf);
  CHECK(reflective_inverse_sensitivity(b, 1.0) == -kInf);
}

TEST_CASE("reflective values are nondecreasing in t and negative only below") {
  NoiseSource rng(2718);
  testing::RandomBoundsOptions opts;
  opts.max_n = 10;
  opts.infinite_upper_prob = 0.25;
  for (int trial = 0; trial < 300; ++trial) {
    const OutputBounds b = testing::random_bounds(rng, opts);
    double prev = -kInf;
    for (int k = 0; k <= 80; ++k) {
      const double t = -41.0 + k;
      const double r = reflective_inverse_sensitivity(b, t);
      CHECK(r >= prev);
      prev = r;
      CHECK((r < 0.0) == (t < b.center() &&
                          inverse_sensitivity(b, t) != std::size_t{0}));
    }
  }
}

TEST_CASE("marginal deltas difference the two sequences") {
  const MarginalDeltas d = marginal_deltas(example_bounds());
  REQUIRE(d.lower.size() == 2);
  CHECK(d.lower[0] == 1.0);
  CHECK(d.lower[1] == 1.0);
  CHECK(d.upper[0] == 2.0);
  CHECK(d.upper[1] == 2.0);
}

TEST_CASE("marginal deltas with infinite tails") {
  const OutputBounds b(5.0, {5.0, 4.0, 3.0}, {5.0, 7.0, kInf});
  const MarginalDeltas d = marginal_deltas(b);
  CHECK(d.upper[0] == 2.0);
  CHECK(d.upper[1] == ExtendedReal::infinity());

  const OutputBounds b2(5.0, {5.0, 4.0, 3.0}, {5.0, kInf, kInf});
  const MarginalDeltas d2 = marginal_deltas(b2);
  CHECK(d2.upper[0] == ExtendedReal::infinity());
  CHECK(d2.upper[1] == 0.0);  // inf - inf contributes no further mass
}

TEST_CASE("scale_bounds rescales every level") {
  const OutputBounds b = scale_bounds(example_bounds(), 0.5);
  CHECK(b.center() == 2.5);
  CHECK(b.lower()[2] == 1.5);
  CHECK(b.upper()[2] == 4.5);
  CHECK_THROWS_AS(scale_bounds(example_bounds(), 0.0), InvalidParameterError);
  CHECK_THROWS_AS(scale_bounds(example_bounds(), -1.0), InvalidParameterError);
}

TEST_CASE("bounds round-trip through JSON with inf sentinels") {
  const OutputBounds b(5.0, {5.0, 4.0, 3.0}, {5.0, 7.0, kInf});
  const nlohmann::json j = b;
  CHECK(j["upper"][2] == "inf");
  CHECK(j["center"] == 5.0);
  const auto back = j.get<OutputBounds>();
  CHECK(back == b);
}

TEST_CASE("JSON round-trip preserves random bounds exactly") {
  NoiseSource rng(161);
  testing::RandomBoundsOptions opts;
  opts.infinite_upper_prob = 0.3;
  for (int trial = 0; trial < 100; ++trial) {
    const OutputBounds b = testing::random_bounds(rng, opts);
    const nlohmann::json j = b;
    CHECK(j.get<OutputBounds>() == b);
  }
}

TEST_CASE("invalid JSON bounds are rejected") {
  const nlohmann::json j{{"center", 1.0},
                         {"lower", {1.0, 2.0}},
                         {"upper", {1.0, 2.0}}};
  CHECK_THROWS_AS(j.get<OutputBounds>(), InvalidParameterError);
  const nlohmann::json bad_string{{"center", 1.0},
                                  {"lower", {1.0, "nan"}},
                                  {"upper", {1.0, 2.0}}};
  CHECK_THROWS_AS(bad_string.get<OutputBounds>(), InvalidParameterError);
}

}  // namespace
}  // namespace asymdp
