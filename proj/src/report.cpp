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

#include "cbmsim/report.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cbmsim {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Shortest round-trip representation; locale independent.
std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

ordered_json stat_json(const Stat& s) {
  return ordered_json{{"mean", s.mean}, {"std", s.std}, {"ci95", s.ci95}};
}

ordered_json scenario_json(const ScenarioConfig& s) {
  return ordered_json{{"life_hours", s.life_hours},
                      {"mission_hours", s.mission_hours},
                      {"missions", s.missions()},
                      {"system_failure_cost", s.system_failure_cost},
                      {"operating_value_per_hour", s.operating_value_per_hour},
                      {"degraded_factor", s.degraded_factor}};
}

ordered_json manifest_object(const RunManifest& m, bool with_timestamps) {
  ordered_json j;
  j["tool"] = "cbmsim";
  j["version"] = std::string(kToolVersion);
  j["model_hash"] = m.model_hash;
  if (!m.strategy_hash.empty()) j["strategy_hash"] = m.strategy_hash;
  if (!m.baseline_hash.empty()) j["baseline_hash"] = m.baseline_hash;
  if (!m.candidate_hash.empty()) j["candidate_hash"] = m.candidate_hash;
  j["seed"] = m.seed;
  j["iterations"] = m.iterations;
  j["scenario"] = scenario_json(m.scenario);
  if (with_timestamps) {
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
  }
  return j;
}

std::string manifest_comment(const RunManifest& m) {
  return "# manifest " + manifest_object(m, false).dump() + "\n";
}

}  // namespace

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Strategy parse_strategy(std::string_view document, const SystemModel& model,
                        std::string fallback_name) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError({std::string("malformed strategy document: ") + e.what()});
  }
  Strategy s = Strategy::unmonitored(model.size(), std::move(fallback_name));
  const json* monitors = &doc;
  if (doc.is_object()) {
    if (doc.contains("name") && doc["name"].is_string()) s.name = doc["name"].get<std::string>();
    if (!doc.contains("monitors")) throw ParseError({"strategy object needs a 'monitors' array"});
    monitors = &doc["monitors"];
  }
  if (!monitors->is_array()) throw ParseError({"strategy monitors must be an array"});

  std::vector<std::string> problems;
  std::set<int> seen;
  for (std::size_t i = 0; i < monitors->size(); ++i) {
    const json& e = (*monitors)[i];
    const std::string path = "monitors[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("component") || !e.contains("p_cms") ||
        !e["component"].is_number_integer() || !e["p_cms"].is_number()) {
      problems.push_back(path + ": expected {\"component\": <id>, \"p_cms\": <probability>}");
      continue;
    }
    const int id = e["component"].get<int>();
    const double p = e["p_cms"].get<double>();
    if (id < 1 || static_cast<std::size_t>(id) > model.size()) {
      problems.push_back(path + ": unknown component id " + std::to_string(id));
      continue;
    }
    if (!seen.insert(id).second) problems.push_back(path + ": component " + std::to_string(id) + " listed twice");
    if (!(p >= 0.0 && p <= 1.0)) problems.push_back(path + ": p_cms must lie in [0,1]");
    s.p_cms[id - 1] = p;
  }
  if (!problems.empty()) throw ParseError(problems);
  return s;
}

std::string serialize_strategy(const Strategy& strategy) {
  ordered_json monitors = ordered_json::array();
  for (std::size_t i = 0; i < strategy.p_cms.size(); ++i) {
    if (strategy.p_cms[i] > 0.0) {
      monitors.push_back(ordered_json{{"component", i + 1}, {"p_cms", strategy.p_cms[i]}});
    }
  }
  return ordered_json{{"name", strategy.name}, {"monitors", monitors}}.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& manifest, bool with_timestamps) {
  return manifest_object(manifest, with_timestamps).dump(2) + "\n";
}

std::string validation_text(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& v : report) os << v.path << ": " << v.message << "\n";
  return os.str();
}

std::string validation_json(const ValidationReport& report) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : report) arr.push_back(ordered_json{{"path", v.path}, {"message", v.message}});
  return ordered_json{{"valid", report.empty()}, {"violations", arr}}.dump(2) + "\n";
}

std::string modules_csv(const std::vector<ModuleDef>& modules) {
  std::ostringstream os;
  os << "module,members,branch\n";
  for (const auto& m : modules) {
    os << m.index << ",\"";
    for (std::size_t i = 0; i < m.members.size(); ++i) os << (i ? " " : "") << m.members[i];
    os << "\"," << m.branch << "\n";
  }
  return os.str();
}

std::string modules_json(const std::vector<ModuleDef>& modules, std::size_t n_components) {
  ordered_json arr = ordered_json::array();
  for (const auto& m : modules) {
    arr.push_back(ordered_json{{"module", m.index}, {"members", m.members}, {"branch", m.branch}});
  }
  ordered_json critical = ordered_json::array();
  const auto flags = critical_components(modules, n_components);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) critical.push_back(i + 1);
  }
  return ordered_json{{"modules", arr}, {"critical_components", critical}}.dump(2) + "\n";
}

std::string records_csv(const std::vector<IterationRecord>& records, const SystemModel& model,
                        const RunManifest& manifest) {
  std::ostringstream os;
  os << "# cbmsim records v" << kRecordsSchemaVersion << "\n" << manifest_comment(manifest);
  const std::size_t n = model.size();
  const std::size_t m = records.empty() ? 0 : records.front().module_failures.size();
  os << "iteration,system_operating_hours,lost_hours,degraded_hours,system_failures,"
        "missions_completed,lcc";
  for (std::size_t i = 1; i <= n; ++i) os << ",cm_" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",pm_" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",op_hours_" << i;
  for (std::size_t j = 1; j <= m; ++j) os << ",module_failures_" << j;
  os << "\n";
  for (std::size_t h = 0; h < records.size(); ++h) {
    const auto& r = records[h];
    os << h + 1 << ',' << num(r.system_operating_hours) << ','
       << num(model.scenario.life_hours - r.system_operating_hours) << ',' << num(r.degraded_hours)
       << ',' << r.system_failures << ',' << r.missions_completed << ','
       << num(lifecycle_cost(CostDrivers::of(r), model));
    for (int v : r.cm) os << ',' << v;
    for (int v : r.pm) os << ',' << v;
    for (double v : r.component_operating_hours) os << ',' << num(v);
    for (int v : r.module_failures) os << ',' << v;
    os << "\n";
  }
  return os.str();
}

std::string summary_json(const SummaryStats& stats, const SystemModel& model,
                         const std::vector<ModuleDef>& modules, const RunManifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_object(manifest, false);
  j["iterations"] = stats.n;
  j["system_operating_hours"] = stat_json(stats.system_operating_hours);
  j["degraded_hours"] = stat_json(stats.degraded_hours);
  j["system_failures"] = stat_json(stats.system_failures);
  j["missions_completed"] = stat_json(stats.missions_completed);
  j["lifecycle_cost"] = lifecycle_cost(CostDrivers::of(stats), model);
  ordered_json comps = ordered_json::array();
  for (std::size_t i = 0; i < stats.cm.size(); ++i) {
    comps.push_back(ordered_json{{"id", i + 1},
                                 {"cm", stat_json(stats.cm[i])},
                                 {"pm", stat_json(stats.pm[i])},
                                 {"operating_hours", stat_json(stats.component_operating_hours[i])}});
  }
  j["components"] = std::move(comps);
  ordered_json mods = ordered_json::array();
  for (std::size_t k = 0; k < stats.module_failures.size(); ++k) {
    ordered_json mj{{"module", k + 1}, {"failures", stat_json(stats.module_failures[k])}};
    if (k < modules.size()) {
      mj["members"] = modules[k].members;
      mj["branch"] = modules[k].branch;
    }
    mods.push_back(std::move(mj));
  }
  j["modules"] = std::move(mods);
  return j.dump(2) + "\n";
}

std::string report_json(const CbaReport& r, const RunManifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_object(manifest, false);
  j["baseline"] = r.baseline_name;
  j["candidate"] = r.candidate_name;
  j["iterations"] = r.iterations;
  j["lcc_baseline"] = r.lcc_baseline;
  j["lcc_candidate"] = r.lcc_candidate;
  j["lcc_baseline_per_iteration"] = stat_json(r.lcc_baseline_per_iteration);
  j["lcc_candidate_per_iteration"] = stat_json(r.lcc_candidate_per_iteration);
  j["cost_avoidance"] = r.cost_avoidance;
  j["maintenance_cost_avoidance"] = r.maintenance_cost_avoidance;
  j["total_investment"] = r.total_investment;
  j["roi"] = r.roi ? ordered_json(*r.roi) : ordered_json(nullptr);
  j["delta_system_operating_hours"] = stat_json(r.delta_system_operating_hours);
  j["delta_degraded_hours"] = stat_json(r.delta_degraded_hours);
  j["delta_system_failures"] = stat_json(r.delta_system_failures);
  ordered_json comps = ordered_json::array();
  for (const auto& c : r.components) {
    comps.push_back(ordered_json{{"id", c.id},
                                 {"baseline_cm", stat_json(c.baseline_cm)},
                                 {"baseline_pm", stat_json(c.baseline_pm)},
                                 {"candidate_cm", stat_json(c.candidate_cm)},
                                 {"candidate_pm", stat_json(c.candidate_pm)},
                                 {"delta_cm", stat_json(c.delta_cm)},
                                 {"delta_pm", stat_json(c.delta_pm)}});
  }
  j["components"] = std::move(comps);
  return j.dump(2) + "\n";
}

std::string plot_csv(const CbaReport& r, double min_cm, const RunManifest& manifest) {
  std::ostringstream os;
  os << "# cbmsim plot-data v" << kPlotSchemaVersion << "\n" << manifest_comment(manifest);
  os << "component,baseline_cm_mean,baseline_cm_ci95,baseline_pm_mean,baseline_pm_ci95,"
        "candidate_cm_mean,candidate_cm_ci95,candidate_pm_mean,candidate_pm_ci95\n";
  for (const auto& c : r.components) {
    if (min_cm >= 0.0 && c.baseline_cm.mean <= min_cm && c.candidate_cm.mean <= min_cm) continue;
    os << c.id << ',' << num(c.baseline_cm.mean) << ',' << num(c.baseline_cm.ci95) << ','
       << num(c.baseline_pm.mean) << ',' << num(c.baseline_pm.ci95) << ','
       << num(c.candidate_cm.mean) << ',' << num(c.candidate_cm.ci95) << ','
       << num(c.candidate_pm.mean) << ',' << num(c.candidate_pm.ci95) << "\n";
  }
  return os.str();
}

std::string trace_csv(const std::vector<std::vector<TraceEvent>>& traces) {
  std::ostringstream os;
  os << "iteration,mission,event,subject,time\n";
  for (std::size_t h = 0; h < traces.size(); ++h) {
    for (const auto& e : traces[h]) {
      os << h + 1 << ',' << e.mission << ',' << to_string(e.kind) << ',' << e.subject << ','
         << num(e.time) << "\n";
    }
  }
  return os.str();
}

}  // namespace cbmsim
