// Copyright 2026 The cbmsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CBMSIM_STOCHASTIC_HPP
#define CBMSIM_STOCHASTIC_HPP

#include <array>
#include <cstdint>

namespace cbmsim {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based uniform stream. Draw n of stream h under a given seed is a
/// pure function of (seed, h, n), so streams can be created in any order and
/// on any thread.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  /// Uniform on (0,1): 53-bit draw from [0,1) with 0 mapped to 2^-53.
  double uniform();

  /// The draw at a given ordinal, without advancing.
  double uniform_at(std::uint64_t ordinal) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// 1 - exp(-(t/scale)^shape). Throws std::domain_error for t < 0.
double weibull_cdf(double t, double scale, double shape);

/// Inverse CDF; p in [0,1).
double weibull_quantile(double p, double scale, double shape);

/// Lifetime of a fresh unit: F^{-1}(1-U) = scale * (-ln U)^{1/shape}.
double sample_first_interarrival(double scale, double shape, double u);

/// Residual lifetime of a unit that has survived to repair age R:
/// F^{-1}(1 - U * (1 - F(R))) - R. Equals sample_first_interarrival at R = 0.
double sample_conditional_interarrival(double scale, double shape, double repair_age,
                                       double u);

/// True iff the monitoring system raises an alarm (U < P).
inline bool cms_detects(double p_cms, double u) { return u < p_cms; }

}  // namespace cbmsim

#endif  // CBMSIM_STOCHASTIC_HPP
