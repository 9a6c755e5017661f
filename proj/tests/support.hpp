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

// Shared test helpers: fixtures, random models and independent oracles.
// Nothing here calls into the library code it is used to check, apart from
// the model types themselves.

#ifndef CBMSIM_TESTS_SUPPORT_HPP
#define CBMSIM_TESTS_SUPPORT_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cbmsim/model.hpp"
#include "cbmsim/simulator.hpp"

namespace cbmsim::testing {

std::string data_path(const std::string& relative);
std::string read_file(const std::string& path);
SystemModel load_usv();

/// Published USV module table: members of modules 1..28.
const std::vector<std::vector<int>>& usv_module_table();
/// Components listed as critical for the USV.
std::vector<int> usv_critical_set();

/// Random valid model with `n_components` components and mixed gate types.
/// Missions default to 50 so campaigns stay cheap.
SystemModel random_model(std::mt19937_64& gen, int n_components, int missions = 50);

/// Random monitoring assignment over the model's components.
Strategy random_strategy(std::mt19937_64& gen, const SystemModel& model);

// ---- statistics oracles ----------------------------------------------------

/// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// Large-sample critical values at the 1% level.
double ks_critical_1pct(std::size_t n);
double ks_critical_1pct(std::size_t n, std::size_t m);

/// Unconditional Weibull lifetimes from std::weibull_distribution on an
/// unrelated generator, kept (minus the age) only if they exceed `age`.
std::vector<double> rejection_sample(double scale, double shape, double age, std::size_t n,
                                     std::uint64_t seed);

/// Welford's streaming mean and population standard deviation.
struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x);
  double population_std() const;
};

// ---- tree oracles ----------------------------------------------------------

/// Static evaluation of the tree with exactly `failed` components down.
bool oracle_static_fails(const GateNode& node, const std::vector<bool>& failed);

/// Probability that a fresh system fails during its first mission, computed
/// by propagating node failure-time distributions on a time grid over
/// [0, T_m]. Independent of the simulator's event logic.
double oracle_first_mission_failure(const SystemModel& model, int grid = 2000);

// ---- stepped iteration -----------------------------------------------------

/// Outcome of driving one lifetime through the simulator's public steps,
/// with bookkeeping recomputed outside the simulator.
struct SteppedRun {
  IterationRecord record;
  double lost_hours = 0.0;            // sum of T_m - t_f,sys over failed missions
  bool counters_frozen_in_mission = true;
};

SteppedRun stepped_iteration(const Simulator& sim, const Strategy& strategy, RngStream& rng);

}  // namespace cbmsim::testing

#endif  // CBMSIM_TESTS_SUPPORT_HPP
