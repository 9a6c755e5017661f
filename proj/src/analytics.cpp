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

#include "cbmsim/analytics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace cbmsim {

Stat describe(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("describe: no values");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  Stat s;
  s.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / n);
  s.ci95 = kZ95 * s.std / std::sqrt(n);
  return s;
}

namespace {

template <typename Get>
Stat describe_by(std::span<const IterationRecord> records, Get get) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& r : records) values.push_back(static_cast<double>(get(r)));
  return describe(values);
}

template <typename Get>
Stat describe_paired(std::span<const IterationRecord> a, std::span<const IterationRecord> b,
                     Get get) {
  std::vector<double> values;
  values.reserve(a.size());
  for (std::size_t h = 0; h < a.size(); ++h) {
    values.push_back(static_cast<double>(get(b[h])) - static_cast<double>(get(a[h])));
  }
  return describe(values);
}

}  // namespace

SummaryStats summarize(std::span<const IterationRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: empty record list");
  SummaryStats s;
  s.n = records.size();
  s.system_operating_hours = describe_by(records, [](const auto& r) { return r.system_operating_hours; });
  s.degraded_hours = describe_by(records, [](const auto& r) { return r.degraded_hours; });
  s.system_failures = describe_by(records, [](const auto& r) { return r.system_failures; });
  s.missions_completed = describe_by(records, [](const auto& r) { return r.missions_completed; });
  const std::size_t n_comp = records.front().cm.size();
  for (std::size_t i = 0; i < n_comp; ++i) {
    s.cm.push_back(describe_by(records, [i](const auto& r) { return r.cm[i]; }));
    s.pm.push_back(describe_by(records, [i](const auto& r) { return r.pm[i]; }));
    s.component_operating_hours.push_back(
        describe_by(records, [i](const auto& r) { return r.component_operating_hours[i]; }));
  }
  for (std::size_t j = 0; j < records.front().module_failures.size(); ++j) {
    s.module_failures.push_back(describe_by(records, [j](const auto& r) { return r.module_failures[j]; }));
  }
  return s;
}

CostDrivers CostDrivers::of(const IterationRecord& r) {
  CostDrivers d;
  d.system_failures = r.system_failures;
  d.system_operating_hours = r.system_operating_hours;
  d.degraded_hours = r.degraded_hours;
  d.cm.assign(r.cm.begin(), r.cm.end());
  d.pm.assign(r.pm.begin(), r.pm.end());
  return d;
}

CostDrivers CostDrivers::of(const SummaryStats& s) {
  CostDrivers d;
  d.system_failures = s.system_failures.mean;
  d.system_operating_hours = s.system_operating_hours.mean;
  d.degraded_hours = s.degraded_hours.mean;
  for (const auto& c : s.cm) d.cm.push_back(c.mean);
  for (const auto& p : s.pm) d.pm.push_back(p.mean);
  return d;
}

double maintenance_cost(const CostDrivers& d, const SystemModel& model) {
  double cost = model.scenario.system_failure_cost * d.system_failures;
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    const auto& c = model.components[i];
    cost += c.cm_cost * d.cm.at(i) + c.pm_cost * d.pm.at(i);
  }
  return cost;
}

double lifecycle_cost(const CostDrivers& d, const SystemModel& model) {
  const auto& s = model.scenario;
  const double lost = s.life_hours - d.system_operating_hours;
  return maintenance_cost(d, model) + s.operating_value_per_hour * lost +
         s.degraded_factor * s.operating_value_per_hour * d.degraded_hours;
}

std::optional<double> roi(double ca, double investment) {
  if (!(investment > 0.0)) return std::nullopt;
  return ca / investment;
}

CbaReport compare_strategies(const CampaignResult& baseline, const CampaignResult& candidate,
                             const SystemModel& model) {
  if (baseline.model_hash != candidate.model_hash) {
    throw std::invalid_argument("campaigns were run on different models (" + baseline.model_hash +
                                " vs " + candidate.model_hash + ")");
  }
  if (baseline.records.size() != candidate.records.size() || baseline.records.empty()) {
    throw std::invalid_argument("campaigns must have the same, non-zero number of iterations");
  }
  const std::span<const IterationRecord> base(baseline.records);
  const std::span<const IterationRecord> cand(candidate.records);
  const SummaryStats sb = summarize(base);
  const SummaryStats sc = summarize(cand);

  CbaReport rep;
  rep.baseline_name = baseline.strategy.name;
  rep.candidate_name = candidate.strategy.name;
  rep.iterations = base.size();
  const CostDrivers db = CostDrivers::of(sb);
  const CostDrivers dc = CostDrivers::of(sc);
  rep.lcc_baseline = lifecycle_cost(db, model);
  rep.lcc_candidate = lifecycle_cost(dc, model);
  rep.cost_avoidance = cost_avoidance(rep.lcc_baseline, rep.lcc_candidate);
  rep.maintenance_cost_avoidance = maintenance_cost(db, model) - maintenance_cost(dc, model);
  rep.total_investment = candidate.strategy.investment(model);
  rep.roi = roi(rep.cost_avoidance, rep.total_investment);

  auto lcc_of = [&](const IterationRecord& r) { return lifecycle_cost(CostDrivers::of(r), model); };
  rep.lcc_baseline_per_iteration = describe_by(base, lcc_of);
  rep.lcc_candidate_per_iteration = describe_by(cand, lcc_of);
  rep.delta_system_operating_hours =
      describe_paired(base, cand, [](const auto& r) { return r.system_operating_hours; });
  rep.delta_degraded_hours = describe_paired(base, cand, [](const auto& r) { return r.degraded_hours; });
  rep.delta_system_failures = describe_paired(base, cand, [](const auto& r) { return r.system_failures; });

  for (std::size_t i = 0; i < model.components.size(); ++i) {
    ComponentDelta cd;
    cd.id = model.components[i].id;
    cd.baseline_cm = sb.cm[i];
    cd.baseline_pm = sb.pm[i];
    cd.candidate_cm = sc.cm[i];
    cd.candidate_pm = sc.pm[i];
    cd.delta_cm = describe_paired(base, cand, [i](const auto& r) { return r.cm[i]; });
    cd.delta_pm = describe_paired(base, cand, [i](const auto& r) { return r.pm[i]; });
    rep.components.push_back(cd);
  }
  return rep;
}

}  // namespace cbmsim
