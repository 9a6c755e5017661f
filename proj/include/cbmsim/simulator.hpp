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

#ifndef CBMSIM_SIMULATOR_HPP
#define CBMSIM_SIMULATOR_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cbmsim/model.hpp"
#include "cbmsim/modularizer.hpp"
#include "cbmsim/stochastic.hpp"

namespace cbmsim {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// Runtime bookkeeping of one component across missions.
struct ComponentState {
  bool working = true;
  double t_op = 0.0;          // hours consumed since last maintenance
  double total_op = 0.0;      // accumulated operating hours
  double repair_age = 0.0;    // hours since last replacement
  double interarrival = 0.0;  // pending failure interarrival, compared with t_op
  int n_cm = 0;
  int n_pm = 0;
  int n_repairs = 0;  // minimal repairs since last replacement

  // Per-mission scratch, reset before every mission.
  double fail_time = kNever;   // time within the mission the unit fails
  double activation = kNever;  // spares: time the unit took over
};

/// Monitoring assignment. p_cms[i] is the detection probability of component
/// i+1; zero means unmonitored.
struct Strategy {
  std::string name = "baseline";
  std::vector<double> p_cms;

  static Strategy unmonitored(std::size_t n_components, std::string name = "baseline");
  bool monitored(int id) const { return p_cms.at(id - 1) > 0.0; }
  /// Sum of CMS investment over monitored components.
  double investment(const SystemModel& model) const;
  bool operator==(const Strategy&) const = default;
};

/// Outcome of one lifetime (all missions of one iteration).
struct IterationRecord {
  double system_operating_hours = 0.0;
  double degraded_hours = 0.0;
  int system_failures = 0;
  int missions_completed = 0;
  std::vector<int> cm;
  std::vector<int> pm;
  std::vector<double> component_operating_hours;
  std::vector<int> module_failures;

  bool operator==(const IterationRecord&) const = default;
};

struct TraceEvent {
  enum class Kind { kPm, kCm, kReplace, kSpareActivated, kSystemFailure, kMissionComplete };
  int mission = 0;
  Kind kind = Kind::kCm;
  int subject = 0;  // component id, or module index for kSystemFailure
  double time = 0.0;
};

std::string_view to_string(TraceEvent::Kind kind);

/// Result of evaluating the modules for one mission.
struct ModuleAssessment {
  std::vector<double> module_time;  // per module, kNever if it survived
  int failed_module = -1;           // 0-based, lowest index on ties
  double system_failure_time = kNever;

  bool system_failed() const { return failed_module >= 0; }
};

struct MissionTally {
  bool completed = true;
  double operating_hours = 0.0;
  double degraded_hours = 0.0;
};

/// Flattened fault tree plus module map, evaluated once per mission.
class Simulator {
 public:
  /// Copies and decomposes the model. Throws DecompositionError.
  explicit Simulator(SystemModel model);

  const SystemModel& model() const { return model_; }
  const std::vector<ModuleDef>& modules() const { return modules_; }
  int missions() const { return model_.scenario.missions(); }
  double mission_hours() const { return model_.scenario.mission_hours; }

  /// Fresh states with first interarrivals drawn in id order.
  std::vector<ComponentState> initial_states(RngStream& rng) const;

  /// Condition-based PM before a mission. Components with prior operating
  /// time that would not survive the next mission raise an alarm with their
  /// detection probability; one draw per such monitored component.
  void assess_cbm(std::span<ComponentState> states, const Strategy& strategy, RngStream& rng,
                  int mission = 0, std::vector<TraceEvent>* trace = nullptr) const;

  /// Starts a mission: clears scratch fields and marks starting components
  /// and dormant spares that cannot last the mission as failed with their
  /// within-mission failure time. Returns true if any unit failed.
  bool assess_starting_components(std::span<ComponentState> states) const;

  /// Evaluates every module holding a failed unit, activating spares as
  /// needed. The system fails at the earliest module failure.
  ModuleAssessment assess_modules(std::span<ComponentState> states) const;

  /// Restores units whose failure would fall after the system failure and
  /// cancels spare activations after that time.
  void verify_component_failures(std::span<ComponentState> states,
                                 const ModuleAssessment& assessment) const;

  /// Degraded time, operating-time accrual and corrective maintenance.
  MissionTally settle_mission(std::span<ComponentState> states, const ModuleAssessment& assessment,
                              RngStream& rng, int mission = 0,
                              std::vector<TraceEvent>* trace = nullptr) const;

  IterationRecord run_iteration(const Strategy& strategy, RngStream& rng,
                                std::vector<TraceEvent>* trace = nullptr) const;

 private:
  struct FlatNode {
    GateKind kind;
    int k = 0;
    int component = -1;  // 0-based
    int first_child = 0;
    int n_children = 0;
  };

  int flatten(const GateNode& node);
  double evaluate(int node, std::span<ComponentState> states) const;
  double draw_interarrival(const ComponentState& st, int index, RngStream& rng) const;

  SystemModel model_;
  std::vector<ModuleDef> modules_;
  std::vector<FlatNode> nodes_;
  std::vector<int> children_;
  std::vector<int> module_root_;
  std::vector<int> module_of_component_;
};

struct CampaignOptions {
  std::uint64_t seed = 0;
  int iterations = 1;
  int threads = 1;
  bool trace = false;
};

struct Campaign {
  std::vector<IterationRecord> records;        // ordered by iteration index
  std::vector<std::vector<TraceEvent>> traces;  // empty unless tracing
};

/// Runs independent iterations h = 1..N on streams (seed, h). The result is
/// independent of the thread count.
Campaign run_campaign(const Simulator& sim, const Strategy& strategy, const CampaignOptions& opts);

}  // namespace cbmsim

#endif  // CBMSIM_SIMULATOR_HPP
