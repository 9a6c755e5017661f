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

#include "cbmsim/stochastic.hpp"

#include <cmath>
#include <stdexcept>

namespace cbmsim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double RngStream::uniform_at(std::uint64_t ordinal) const {
  const auto out = philox4x32_10(
      {static_cast<std::uint32_t>(ordinal), static_cast<std::uint32_t>(ordinal >> 32),
       static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
      {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  const std::uint64_t mantissa = bits >> 11;
  return mantissa == 0 ? kTwoPowMinus53 : static_cast<double>(mantissa) * kTwoPowMinus53;
}

double RngStream::uniform() { return uniform_at(counter_++); }

double weibull_cdf(double t, double scale, double shape) {
  if (t < 0.0) throw std::domain_error("weibull_cdf: negative time");
  return -std::expm1(-std::pow(t / scale, shape));
}

double weibull_quantile(double p, double scale, double shape) {
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("weibull_quantile: p outside [0,1)");
  return scale * std::pow(-std::log1p(-p), 1.0 / shape);
}

double sample_first_interarrival(double scale, double shape, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("interarrival draw must lie in (0,1)");
  return scale * std::pow(-std::log(u), 1.0 / shape);
}

double sample_conditional_interarrival(double scale, double shape, double repair_age,
                                       double u) {
  if (repair_age < 0.0) throw std::domain_error("negative repair age");
  if (repair_age == 0.0) return sample_first_interarrival(scale, shape, u);
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("interarrival draw must lie in (0,1)");
  // Solve H(R + t) = H(R) - ln U with H(x) = (x/scale)^shape, written as
  // R * ((1 + x)^{1/shape} - 1) so that small residuals keep full precision.
  const double cum_hazard = std::pow(repair_age / scale, shape);
  const double x = -std::log(u) / cum_hazard;
  return repair_age * std::expm1(std::log1p(x) / shape);
}

}  // namespace cbmsim
