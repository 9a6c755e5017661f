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

#ifndef CBMSIM_ANALYTICS_HPP
#define CBMSIM_ANALYTICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbmsim/model.hpp"
#include "cbmsim/simulator.hpp"

namespace cbmsim {

inline constexpr double kZ95 = 1.96;

/// Mean, population standard deviation (divisor N) and the normal 95%
/// half-width 1.96 * std / sqrt(N).
struct Stat {
  double mean = 0.0;
  double std = 0.0;
  double ci95 = 0.0;
};

Stat describe(std::span<const double> values);

struct SummaryStats {
  std::size_t n = 0;
  Stat system_operating_hours;
  Stat degraded_hours;
  Stat system_failures;
  Stat missions_completed;
  std::vector<Stat> cm;
  std::vector<Stat> pm;
  std::vector<Stat> component_operating_hours;
  std::vector<Stat> module_failures;
};

/// Throws std::invalid_argument on an empty list.
SummaryStats summarize(std::span<const IterationRecord> records);

/// Metric totals that enter the life-cycle cost; either one iteration or
/// campaign means.
struct CostDrivers {
  double system_failures = 0.0;
  double system_operating_hours = 0.0;
  double degraded_hours = 0.0;
  std::vector<double> cm;
  std::vector<double> pm;

  static CostDrivers of(const IterationRecord& record);
  static CostDrivers of(const SummaryStats& stats);
};

/// C_f * N_f + sum_i (C_cm,i N_cm,i + C_pm,i N_pm,i) + C_OP * T_L + d C_OP T_d
/// with lost time T_L = T_life - T_op,sys.
double lifecycle_cost(const CostDrivers& drivers, const SystemModel& model);

/// Maintenance part only: system failures plus CM/PM costs.
double maintenance_cost(const CostDrivers& drivers, const SystemModel& model);

inline double cost_avoidance(double lcc_original, double lcc_new) { return lcc_original - lcc_new; }

/// CA / investment; nullopt when nothing is invested.
std::optional<double> roi(double cost_avoidance, double investment);

struct ComponentDelta {
  int id = 0;
  Stat baseline_cm, baseline_pm, candidate_cm, candidate_pm;
  Stat delta_cm, delta_pm;  // candidate - baseline, paired by iteration
};

struct CbaReport {
  std::string baseline_name;
  std::string candidate_name;
  std::size_t iterations = 0;
  double lcc_baseline = 0.0;
  double lcc_candidate = 0.0;
  Stat lcc_baseline_per_iteration;
  Stat lcc_candidate_per_iteration;
  double cost_avoidance = 0.0;
  double maintenance_cost_avoidance = 0.0;
  double total_investment = 0.0;
  std::optional<double> roi;
  Stat delta_system_operating_hours;
  Stat delta_degraded_hours;
  Stat delta_system_failures;
  std::vector<ComponentDelta> components;
};

/// A campaign tagged with the identity of the inputs that produced it.
struct CampaignResult {
  std::string model_hash;
  Strategy strategy;
  std::vector<IterationRecord> records;
};

/// Paired comparison of two campaigns run on the same model. Throws
/// std::invalid_argument when the model hashes or iteration counts differ.
CbaReport compare_strategies(const CampaignResult& baseline, const CampaignResult& candidate,
                             const SystemModel& model);

}  // namespace cbmsim

#endif  // CBMSIM_ANALYTICS_HPP
