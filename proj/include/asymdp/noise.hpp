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
#ifndef ASYMDP_NOISE_HPP_
#define ASYMDP_NOISE_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "asymdp/common.hpp"

namespace asymdp {

/// Seedable randomness source. Identical seeds produce identical draw
/// sequences; all variates are derived from raw engine bits rather than
/// std::*_distribution so the sequence does not depend on the standard
/// library implementation.
///
/// A NoiseSource is single-owner: it is not safe to share one instance
/// across threads. Parallel work should hold independently seeded sources.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform draw in (0, 1] with 53-bit resolution. Never returns 0, so
  /// log(uniform01()) is always finite.
  double uniform01() {
    return 1.0 - std::ldexp(static_cast<double>(engine_() >> 11), -53);
  }

  /// Uniform draw in (lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound). Rejection-sampled, unbiased.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) {
      throw InvalidParameterError("uniform_index: bound must be positive");
    }
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Draw from the exponential distribution with the given scale parameter,
/// via inverse CDF on a uniform in (0, 1]. Scale 0 is the legal degenerate
/// distribution that returns exactly 0, which deterministic tests use to
/// exercise exact control flow.
inline double sample_expo(double scale, NoiseSource& rng) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw InvalidParameterError("sample_expo: scale must be finite and >= 0");
  }
  if (scale == 0.0) {
    return 0.0;
  }
  return -scale * std::log(rng.uniform01());
}

/// Standard normal draw (Box-Muller; the sine pair is discarded to keep the
/// stream position independent of call parity).
inline double standard_normal(NoiseSource& rng) {
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic per-(stream, index) seed derivation, used to hand each
/// benchmark trial its own independent NoiseSource.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

}  // namespace asymdp

#endif  // ASYMDP_NOISE_HPP_
