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

#ifndef CBMSIM_MODEL_HPP
#define CBMSIM_MODEL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cbmsim {

/// How a component participates in a mission.
enum class Role {
  kStarting,   ///< active from the start of every mission
  kColdSpare,  ///< dormant standby, does not age while dormant
  kWarmSpare,  ///< dormant standby, ages at the dormancy factor
};

std::string_view to_string(Role role);

/// Static data of one repairable component. Times in hours, costs in dollars.
struct ComponentSpec {
  int id = 0;
  std::string label;
  double shape = 1.0;  // Weibull beta
  double scale = 1.0;  // Weibull alpha, hours
  double dormancy = 1.0;
  Role role = Role::kStarting;
  double cm_cost = 0.0;
  double pm_cost = 0.0;
  double cms_investment = 0.0;
  int max_min_repairs = 0;
  /// Exponential source rate the Weibull scale was derived from, if known.
  std::optional<double> failure_rate;

  /// Dormancy used for aging: starting components always age at full rate.
  double aging_factor() const { return role == Role::kStarting ? 1.0 : dormancy; }

  bool operator==(const ComponentSpec&) const = default;
};

enum class GateKind { kBasic, kOr, kAnd, kVoting, kSpare, kFdep };

std::string_view to_string(GateKind kind);

/// A fault tree node. Gates own their children by value.
///
/// SPARE stores the primary as children[0] followed by the spares in
/// activation order. FDEP stores the trigger as children[0] followed by the
/// dependents.
struct GateNode {
  GateKind kind = GateKind::kBasic;
  std::string label;
  int component = 0;  // kBasic only
  int k = 0;          // kVoting only
  std::vector<GateNode> children;

  static GateNode basic(int id);
  static GateNode gate(GateKind kind, std::vector<GateNode> children,
                       std::string label = {});
  static GateNode voting(int k, std::vector<GateNode> children,
                         std::string label = {});
  static GateNode spare(GateNode primary, std::vector<GateNode> spares,
                        std::string label = {});
  static GateNode fdep(GateNode trigger, std::vector<GateNode> dependents,
                       std::string label = {});

  bool is_basic() const { return kind == GateKind::kBasic; }

  bool operator==(const GateNode&) const = default;
};

/// Scenario and system-level cost constants.
struct ScenarioConfig {
  double life_hours = 0.0;
  double mission_hours = 0.0;
  int iterations = 1;
  double system_failure_cost = 0.0;
  double operating_value_per_hour = 0.0;
  double degraded_factor = 0.0;
  std::uint64_t seed = 0;

  /// Number of missions per lifetime; requires life/mission to be integral.
  int missions() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Full static description of a system. Component ids are dense 1..N and
/// components[i] has id i+1.
struct SystemModel {
  std::vector<ComponentSpec> components;
  GateNode tree;
  ScenarioConfig scenario;

  const ComponentSpec& component(int id) const { return components.at(id - 1); }
  std::size_t size() const { return components.size(); }

  bool operator==(const SystemModel&) const = default;
};

/// Thrown when a system document cannot be turned into a SystemModel.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct Violation {
  std::string path;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Parses the JSON system document. Schema-level problems (malformed JSON,
/// unknown gate kinds, VOTING k out of range, dangling or duplicate ids,
/// non-integral mission count) raise ParseError listing every problem found.
SystemModel parse_system(std::string_view document);

/// Serializes back to the JSON document layout accepted by parse_system.
std::string serialize_system(const SystemModel& model);

/// Lists every invariant violation. Empty means the model is simulable.
ValidationReport validate(const SystemModel& model);

/// Component ids of all BASIC leaves in depth-first order.
std::vector<int> leaf_ids(const GateNode& node);

}  // namespace cbmsim

#endif  // CBMSIM_MODEL_HPP
