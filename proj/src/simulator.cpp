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

#include "cbmsim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cbmsim {

std::string_view to_string(TraceEvent::Kind kind) {
  switch (kind) {
    case TraceEvent::Kind::kPm:
      return "pm";
    case TraceEvent::Kind::kCm:
      return "cm";
    case TraceEvent::Kind::kReplace:
      return "replace";
    case TraceEvent::Kind::kSpareActivated:
      return "spare_activated";
    case TraceEvent::Kind::kSystemFailure:
      return "system_failure";
    case TraceEvent::Kind::kMissionComplete:
      return "mission_complete";
  }
  return "?";
}

Strategy Strategy::unmonitored(std::size_t n_components, std::string name) {
  Strategy s;
  s.name = std::move(name);
  s.p_cms.assign(n_components, 0.0);
  return s;
}

double Strategy::investment(const SystemModel& model) const {
  double total = 0.0;
  for (std::size_t i = 0; i < p_cms.size(); ++i) {
    if (p_cms[i] > 0.0) total += model.components.at(i).cms_investment;
  }
  return total;
}

namespace {

void emit(std::vector<TraceEvent>* trace, int mission, TraceEvent::Kind kind, int subject,
          double time) {
  if (trace) trace->push_back({mission, kind, subject, time});
}

void require_nonnegative(double value, const char* what) {
  if (value < 0.0) throw std::logic_error(std::string("negative accrual: ") + what);
}

}  // namespace

Simulator::Simulator(SystemModel model) : model_(std::move(model)) {
  modules_ = decompose(model_);
  module_of_component_.assign(model_.size(), -1);
  for (const auto& m : modules_) {
    module_root_.push_back(flatten(*m.subtree));
    for (int id : m.members) module_of_component_.at(id - 1) = m.index - 1;
  }
  if (missions() < 1) throw std::invalid_argument("life_hours / mission_hours must be a positive integer");
}

int Simulator::flatten(const GateNode& node) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back({node.kind, node.k, node.is_basic() ? node.component - 1 : -1, 0, 0});
  std::vector<int> kids;
  kids.reserve(node.children.size());
  for (const auto& c : node.children) kids.push_back(flatten(c));
  nodes_[index].first_child = static_cast<int>(children_.size());
  nodes_[index].n_children = static_cast<int>(kids.size());
  children_.insert(children_.end(), kids.begin(), kids.end());
  return index;
}

double Simulator::draw_interarrival(const ComponentState& st, int index, RngStream& rng) const {
  const auto& spec = model_.components[index];
  return sample_conditional_interarrival(spec.scale, spec.shape, st.repair_age, rng.uniform());
}

std::vector<ComponentState> Simulator::initial_states(RngStream& rng) const {
  std::vector<ComponentState> states(model_.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& spec = model_.components[i];
    states[i].interarrival = sample_first_interarrival(spec.scale, spec.shape, rng.uniform());
  }
  return states;
}

void Simulator::assess_cbm(std::span<ComponentState> states, const Strategy& strategy,
                           RngStream& rng, int mission, std::vector<TraceEvent>* trace) const {
  const double tm = mission_hours();
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& st = states[i];
    const double p = strategy.p_cms[i];
    if (st.t_op == 0.0 || p <= 0.0) continue;
    const auto& spec = model_.components[i];
    if (spec.aging_factor() * tm + st.t_op < st.interarrival) continue;
    if (!cms_detects(p, rng.uniform())) continue;

    st.total_op += st.t_op;
    st.repair_age += st.t_op;
    st.n_pm += 1;
    st.n_repairs += 1;
    st.t_op = 0.0;
    emit(trace, mission, TraceEvent::Kind::kPm, spec.id, 0.0);
    if (st.n_repairs > spec.max_min_repairs) {
      st.repair_age = 0.0;
      st.n_repairs = 0;
      emit(trace, mission, TraceEvent::Kind::kReplace, spec.id, 0.0);
    }
    st.interarrival = draw_interarrival(st, static_cast<int>(i), rng);
  }
}

bool Simulator::assess_starting_components(std::span<ComponentState> states) const {
  const double tm = mission_hours();
  bool any = false;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& st = states[i];
    const auto& spec = model_.components[i];
    st.working = true;
    st.fail_time = kNever;
    st.activation = spec.role == Role::kStarting ? 0.0 : kNever;
    const double q = spec.aging_factor();
    if (q == 0.0) continue;  // cold spares cannot fail while dormant
    if (q * tm + st.t_op < st.interarrival) continue;
    st.working = false;
    st.fail_time = (st.interarrival - st.t_op) / q;
    any = true;
  }
  return any;
}

double Simulator::evaluate(int index, std::span<ComponentState> states) const {
  const FlatNode& node = nodes_[index];
  const int* kids = children_.data() + node.first_child;
  switch (node.kind) {
    case GateKind::kBasic:
      return states[node.component].fail_time;
    case GateKind::kOr:
    case GateKind::kFdep: {
      double t = kNever;
      for (int c = 0; c < node.n_children; ++c) t = std::min(t, evaluate(kids[c], states));
      return t;
    }
    case GateKind::kAnd: {
      double t = 0.0;
      for (int c = 0; c < node.n_children; ++c) t = std::max(t, evaluate(kids[c], states));
      return t;
    }
    case GateKind::kVoting: {
      double small[16];
      std::vector<double> big;
      double* times = small;
      if (node.n_children > 16) {
        big.resize(node.n_children);
        times = big.data();
      }
      for (int c = 0; c < node.n_children; ++c) times[c] = evaluate(kids[c], states);
      std::nth_element(times, times + node.k - 1, times + node.n_children);
      return times[node.k - 1];
    }
    case GateKind::kSpare: {
      const double tm = mission_hours();
      double current = evaluate(kids[0], states);
      if (current > tm) return kNever;
      for (int c = 1; c < node.n_children; ++c) {
        const int comp = nodes_[kids[c]].component;
        auto& st = states[comp];
        if (st.fail_time <= current) continue;  // already lost while dormant
        const double q = model_.components[comp].aging_factor();
        const double remaining = st.interarrival - st.t_op - q * current;
        require_nonnegative(remaining, "spare residual life");
        st.activation = current;
        const double fail = current + remaining;
        if (fail > tm) {
          st.working = true;
          st.fail_time = kNever;
          return kNever;
        }
        st.working = false;
        st.fail_time = fail;
        current = fail;
      }
      return current;
    }
  }
  return kNever;
}

ModuleAssessment Simulator::assess_modules(std::span<ComponentState> states) const {
  ModuleAssessment out;
  out.module_time.assign(modules_.size(), kNever);
  std::vector<char> touched(modules_.size(), 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].working) touched[module_of_component_[i]] = 1;
  }
  const double tm = mission_hours();
  for (std::size_t j = 0; j < modules_.size(); ++j) {
    if (!touched[j]) continue;
    const double t = evaluate(module_root_[j], states);
    if (t > tm) continue;
    out.module_time[j] = t;
    if (t < out.system_failure_time) {
      out.system_failure_time = t;
      out.failed_module = static_cast<int>(j);
    }
  }
  return out;
}

void Simulator::verify_component_failures(std::span<ComponentState> states,
                                          const ModuleAssessment& assessment) const {
  if (!assessment.system_failed()) return;
  const double tsys = assessment.system_failure_time;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& st = states[i];
    if (model_.components[i].role != Role::kStarting && st.activation > tsys) {
      st.activation = kNever;
    }
    if (!st.working && st.fail_time > tsys) {
      st.working = true;
      st.fail_time = kNever;
    }
  }
}

MissionTally Simulator::settle_mission(std::span<ComponentState> states,
                                       const ModuleAssessment& assessment, RngStream& rng,
                                       int mission, std::vector<TraceEvent>* trace) const {
  MissionTally tally;
  tally.completed = !assessment.system_failed();
  const double end = tally.completed ? mission_hours() : assessment.system_failure_time;
  tally.operating_hours = end;

  double degraded_start = kNever;
  for (const auto& st : states) {
    if (!st.working) degraded_start = std::min(degraded_start, st.fail_time);
  }
  if (degraded_start <= end) tally.degraded_hours = end - degraded_start;

  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& st = states[i];
    const auto& spec = model_.components[i];
    const double q = spec.aging_factor();
    // Hours of life consumed by time t of the mission: dormant until the
    // activation time, full rate afterwards.
    auto consumed = [&](double t) {
      const double dormant = std::min(t, st.activation);
      return q * dormant + (t - dormant);
    };
    if (spec.role != Role::kStarting && st.activation <= end) {
      emit(trace, mission, TraceEvent::Kind::kSpareActivated, spec.id, st.activation);
    }
    if (st.working) {
      const double used = consumed(end);
      require_nonnegative(used, "working component");
      st.t_op += used;
      continue;
    }
    const double used = st.t_op + consumed(st.fail_time);
    require_nonnegative(used, "failed component");
    st.total_op += used;
    st.repair_age += used;
    st.n_cm += 1;
    st.n_repairs += 1;
    st.t_op = 0.0;
    emit(trace, mission, TraceEvent::Kind::kCm, spec.id, st.fail_time);
    if (st.n_repairs > spec.max_min_repairs) {
      st.repair_age = 0.0;
      st.n_repairs = 0;
      emit(trace, mission, TraceEvent::Kind::kReplace, spec.id, st.fail_time);
    }
    st.interarrival = draw_interarrival(st, static_cast<int>(i), rng);
    st.working = true;
  }

  if (tally.completed) {
    emit(trace, mission, TraceEvent::Kind::kMissionComplete, 0, end);
  } else {
    emit(trace, mission, TraceEvent::Kind::kSystemFailure, assessment.failed_module + 1, end);
  }
  return tally;
}

IterationRecord Simulator::run_iteration(const Strategy& strategy, RngStream& rng,
                                         std::vector<TraceEvent>* trace) const {
  if (strategy.p_cms.size() != model_.size()) {
    throw std::invalid_argument("strategy does not match the model's component count");
  }
  IterationRecord rec;
  rec.module_failures.assign(modules_.size(), 0);
  auto states = initial_states(rng);

  const int n_missions = missions();
  for (int g = 1; g <= n_missions; ++g) {
    assess_cbm(states, strategy, rng, g, trace);
    ModuleAssessment assessment;
    if (assess_starting_components(states)) {
      assessment = assess_modules(states);
      verify_component_failures(states, assessment);
    }
    const MissionTally tally = settle_mission(states, assessment, rng, g, trace);
    rec.system_operating_hours += tally.operating_hours;
    rec.degraded_hours += tally.degraded_hours;
    if (tally.completed) {
      rec.missions_completed += 1;
    } else {
      rec.system_failures += 1;
      rec.module_failures[assessment.failed_module] += 1;
    }
  }

  rec.cm.reserve(states.size());
  rec.pm.reserve(states.size());
  rec.component_operating_hours.reserve(states.size());
  for (auto& st : states) {
    st.total_op += st.t_op;
    rec.cm.push_back(st.n_cm);
    rec.pm.push_back(st.n_pm);
    rec.component_operating_hours.push_back(st.total_op);
  }
  return rec;
}

Campaign run_campaign(const Simulator& sim, const Strategy& strategy, const CampaignOptions& opts) {
  if (opts.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  Campaign out;
  const auto n = static_cast<std::size_t>(opts.iterations);
  out.records.resize(n);
  if (opts.trace) out.traces.resize(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t h = next++; h < n; h = next++) {
      try {
        RngStream rng(opts.seed, h + 1);
        out.records[h] = sim.run_iteration(strategy, rng, opts.trace ? &out.traces[h] : nullptr);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(opts.threads, opts.iterations));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace cbmsim
