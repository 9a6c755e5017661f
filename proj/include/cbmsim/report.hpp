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

// File formats: strategy documents, records/summary/report emission and the
// run manifest embedded in every output.

#ifndef CBMSIM_REPORT_HPP
#define CBMSIM_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cbmsim/analytics.hpp"
#include "cbmsim/model.hpp"
#include "cbmsim/modularizer.hpp"
#include "cbmsim/simulator.hpp"

namespace cbmsim {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kRecordsSchemaVersion = 1;
inline constexpr int kPlotSchemaVersion = 1;

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string content_hash(std::string_view bytes);

/// Parses a strategy document: either a JSON array of
/// {"component": id, "p_cms": p} or an object {"name": ..., "monitors": [...]}.
/// Omitted components are unmonitored. Throws ParseError on unknown ids,
/// duplicates or probabilities outside [0,1].
Strategy parse_strategy(std::string_view document, const SystemModel& model,
                        std::string fallback_name = "strategy");

std::string serialize_strategy(const Strategy& strategy);

/// Identity of a run. Everything but the timestamps is embedded in every
/// output so the outputs stay bit-identical across reruns.
struct RunManifest {
  std::string model_hash;
  std::string strategy_hash;   // simulate
  std::string baseline_hash;   // compare
  std::string candidate_hash;  // compare
  ScenarioConfig scenario;
  std::uint64_t seed = 0;
  int iterations = 0;
  std::string started_at;
  std::string finished_at;
};

std::string manifest_json(const RunManifest& manifest, bool with_timestamps);

std::string validation_text(const ValidationReport& report);
std::string validation_json(const ValidationReport& report);

std::string modules_csv(const std::vector<ModuleDef>& modules);
std::string modules_json(const std::vector<ModuleDef>& modules, std::size_t n_components);

/// One row per iteration.
std::string records_csv(const std::vector<IterationRecord>& records, const SystemModel& model,
                        const RunManifest& manifest);

std::string summary_json(const SummaryStats& stats, const SystemModel& model,
                         const std::vector<ModuleDef>& modules, const RunManifest& manifest);

std::string report_json(const CbaReport& report, const RunManifest& manifest);

/// Per-component CM/PM means with 95% half-widths for both strategies.
/// Rows whose CM mean is at most `min_cm` under both strategies are dropped;
/// pass a negative value to keep every component.
std::string plot_csv(const CbaReport& report, double min_cm, const RunManifest& manifest);

std::string trace_csv(const std::vector<std::vector<TraceEvent>>& traces);

}  // namespace cbmsim

#endif  // CBMSIM_REPORT_HPP
