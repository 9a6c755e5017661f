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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cbmsim::testing {

std::string data_path(const std::string& relative) {
  return std::string(CBMSIM_DATA_DIR) + "/" + relative;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SystemModel load_usv() { return parse_system(read_file(data_path("usv/usv_system.json"))); }

const std::vector<std::vector<int>>& usv_module_table() {
  static const std::vector<std::vector<int>> table = {
      {9},  {10}, {11}, {1, 2}, {12, 13}, {3, 4, 7}, {5, 6, 8}, {14},
      {15, 16, 17, 18, 19, 20, 21, 22, 23, 24},
      {25}, {26},
      {27, 28, 29, 30, 31, 32, 33, 34, 35, 36, 37},
      {38}, {39}, {40}, {41}, {42}, {43}, {44},
      {59, 60}, {61, 62},
      {45, 46, 47, 48, 49, 50, 51, 52, 53, 54, 55, 56, 57, 58},
      {67}, {68}, {69}, {70}, {71}, {63, 64, 65, 66}};
  return table;
}

std::vector<int> usv_critical_set() {
  std::vector<int> ids = {9, 10, 11, 14, 25, 26};
  for (int i = 38; i <= 44; ++i) ids.push_back(i);
  for (int i = 67; i <= 71; ++i) ids.push_back(i);
  return ids;
}

// ---- random models ---------------------------------------------------------

namespace {

int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(gen);
}

double uniform_real(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

// Splits ids into `parts` non-empty contiguous chunks.
std::vector<std::vector<int>> split(std::mt19937_64& gen, const std::vector<int>& ids, int parts) {
  std::vector<int> cuts;
  std::vector<int> positions(ids.size() - 1);
  std::iota(positions.begin(), positions.end(), 1);
  std::shuffle(positions.begin(), positions.end(), gen);
  cuts.assign(positions.begin(), positions.begin() + (parts - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::vector<int>> out;
  int start = 0;
  for (int c : cuts) {
    out.emplace_back(ids.begin() + start, ids.begin() + c);
    start = c;
  }
  out.emplace_back(ids.begin() + start, ids.end());
  return out;
}

GateNode build(std::mt19937_64& gen, const std::vector<int>& ids, SystemModel& model) {
  if (ids.size() == 1) return GateNode::basic(ids[0]);
  const int n = static_cast<int>(ids.size());
  switch (uniform_int(gen, 0, 4)) {
    case 0: {  // SPARE: the last one or two ids become spares
      const int n_spares = uniform_int(gen, 1, std::min(2, n - 1));
      std::vector<int> primary_ids(ids.begin(), ids.end() - n_spares);
      std::vector<GateNode> spares;
      for (auto it = ids.end() - n_spares; it != ids.end(); ++it) {
        auto& c = model.components[*it - 1];
        if (uniform_int(gen, 0, 1) == 0) {
          c.role = Role::kColdSpare;
          c.dormancy = 0.0;
        } else {
          c.role = Role::kWarmSpare;
          c.dormancy = uniform_real(gen, 0.1, 0.9);
        }
        spares.push_back(GateNode::basic(*it));
      }
      return GateNode::spare(build(gen, primary_ids, model), std::move(spares), "spare");
    }
    case 1: {  // FDEP
      auto parts = split(gen, ids, uniform_int(gen, 2, std::min(3, n)));
      GateNode trigger = build(gen, parts[0], model);
      std::vector<GateNode> deps;
      for (std::size_t p = 1; p < parts.size(); ++p) deps.push_back(build(gen, parts[p], model));
      return GateNode::fdep(std::move(trigger), std::move(deps), "fdep");
    }
    default: {
      auto parts = split(gen, ids, uniform_int(gen, 2, std::min(3, n)));
      std::vector<GateNode> kids;
      for (const auto& p : parts) kids.push_back(build(gen, p, model));
      const int kind = uniform_int(gen, 0, 2);
      if (kind == 0) return GateNode::gate(GateKind::kOr, std::move(kids), "or");
      if (kind == 1) return GateNode::gate(GateKind::kAnd, std::move(kids), "and");
      const int k = uniform_int(gen, 1, static_cast<int>(kids.size()));
      return GateNode::voting(k, std::move(kids), "voting");
    }
  }
}

}  // namespace

SystemModel random_model(std::mt19937_64& gen, int n_components, int missions) {
  SystemModel model;
  for (int id = 1; id <= n_components; ++id) {
    ComponentSpec c;
    c.id = id;
    c.label = "c" + std::to_string(id);
    c.shape = uniform_real(gen, 0.7, 3.0);
    c.scale = uniform_real(gen, 150.0, 3000.0);
    c.role = Role::kStarting;
    c.dormancy = 1.0;
    c.cm_cost = std::round(uniform_real(gen, 100.0, 5000.0));
    c.pm_cost = std::round(c.cm_cost * uniform_real(gen, 0.1, 1.0));
    c.cms_investment = std::round(uniform_real(gen, 1000.0, 50000.0));
    c.max_min_repairs = uniform_int(gen, 0, 5);
    model.components.push_back(c);
  }
  std::vector<int> ids(n_components);
  std::iota(ids.begin(), ids.end(), 1);
  std::shuffle(ids.begin(), ids.end(), gen);
  const int top = uniform_int(gen, 1, std::min(3, n_components));
  std::vector<GateNode> branches;
  for (const auto& part : split(gen, ids, top)) branches.push_back(build(gen, part, model));
  model.tree = GateNode::gate(GateKind::kOr, std::move(branches), "top");

  model.scenario.mission_hours = 200.0;
  model.scenario.life_hours = 200.0 * missions;
  model.scenario.iterations = 20;
  model.scenario.system_failure_cost = 20000.0;
  model.scenario.operating_value_per_hour = 175.0;
  model.scenario.degraded_factor = 0.2;
  model.scenario.seed = gen();
  return model;
}

Strategy random_strategy(std::mt19937_64& gen, const SystemModel& model) {
  Strategy s = Strategy::unmonitored(model.size(), "random");
  for (auto& p : s.p_cms) {
    if (uniform_int(gen, 0, 1) == 1) p = uniform_real(gen, 0.05, 1.0);
  }
  return s;
}

// ---- statistics ------------------------------------------------------------

double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

// c(0.01) = sqrt(-ln(0.005)/2) = 1.6276
double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  return 1.6276 * std::sqrt((dn + dm) / (dn * dm));
}

std::vector<double> rejection_sample(double scale, double shape, double age, std::size_t n,
                                     std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::weibull_distribution<double> life(shape, scale);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double x = life(gen);
    if (x > age) out.push_back(x - age);
  }
  return out;
}

void Welford::add(double x) {
  ++n;
  const double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
}

double Welford::population_std() const { return n ? std::sqrt(m2 / static_cast<double>(n)) : 0.0; }

// ---- tree oracles ----------------------------------------------------------

bool oracle_static_fails(const GateNode& node, const std::vector<bool>& failed) {
  int down = 0;
  for (const auto& c : node.children) down += oracle_static_fails(c, failed) ? 1 : 0;
  const int n = static_cast<int>(node.children.size());
  switch (node.kind) {
    case GateKind::kBasic:
      return failed.at(node.component - 1);
    case GateKind::kOr:
    case GateKind::kFdep:
      return down > 0;
    case GateKind::kAnd:
    case GateKind::kSpare:
      return down == n;
    case GateKind::kVoting:
      return down >= node.k;
  }
  return false;
}

namespace {

double weibull_cdf_oracle(double t, double scale, double shape) {
  if (t <= 0.0) return 0.0;
  return -std::expm1(-std::pow(t / scale, shape));
}

using Grid = std::vector<double>;

// P(node has failed by grid time t_k) for every k.
Grid node_cdf(const GateNode& node, const SystemModel& model, const Grid& t) {
  const std::size_t K = t.size();
  Grid out(K, 0.0);
  switch (node.kind) {
    case GateKind::kBasic: {
      const auto& c = model.component(node.component);
      for (std::size_t k = 0; k < K; ++k) out[k] = weibull_cdf_oracle(t[k], c.scale, c.shape);
      return out;
    }
    case GateKind::kOr:
    case GateKind::kFdep: {
      Grid survive(K, 1.0);
      for (const auto& c : node.children) {
        const Grid g = node_cdf(c, model, t);
        for (std::size_t k = 0; k < K; ++k) survive[k] *= 1.0 - g[k];
      }
      for (std::size_t k = 0; k < K; ++k) out[k] = 1.0 - survive[k];
      return out;
    }
    case GateKind::kAnd: {
      std::fill(out.begin(), out.end(), 1.0);
      for (const auto& c : node.children) {
        const Grid g = node_cdf(c, model, t);
        for (std::size_t k = 0; k < K; ++k) out[k] *= g[k];
      }
      return out;
    }
    case GateKind::kVoting: {
      std::vector<Grid> kids;
      for (const auto& c : node.children) kids.push_back(node_cdf(c, model, t));
      for (std::size_t k = 0; k < K; ++k) {
        // Poisson-binomial: dist[m] = P(m children down).
        std::vector<double> dist(kids.size() + 1, 0.0);
        dist[0] = 1.0;
        for (std::size_t c = 0; c < kids.size(); ++c) {
          for (std::size_t m = c + 1; m-- > 0;) {
            dist[m + 1] += dist[m] * kids[c][k];
            dist[m] *= 1.0 - kids[c][k];
          }
        }
        double p = 0.0;
        for (std::size_t m = static_cast<std::size_t>(node.k); m < dist.size(); ++m) p += dist[m];
        out[k] = p;
      }
      return out;
    }
    case GateKind::kSpare: {
      // The gate's current failure time C starts as the primary's. A spare
      // with life L and dormancy q is either dead before C (L <= qC) or
      // runs from C until C + L - qC. Either way the new time is <= t iff
      // C <= t and L <= qC + (t - C).
      Grid g = node_cdf(node.children[0], model, t);
      for (std::size_t s = 1; s < node.children.size(); ++s) {
        const auto& spec = model.component(node.children[s].component);
        const double q = spec.aging_factor();
        Grid next(K, 0.0);
        for (std::size_t k = 1; k < K; ++k) {
          double acc = 0.0;
          for (std::size_t m = 1; m <= k; ++m) {
            const double mass = g[m] - g[m - 1];
            if (mass == 0.0) continue;
            const double c = 0.5 * (t[m] + t[m - 1]);
            acc += mass * weibull_cdf_oracle(q * c + t[k] - c, spec.scale, spec.shape);
          }
          next[k] = acc;
        }
        g = std::move(next);
      }
      return g;
    }
  }
  return out;
}

}  // namespace

double oracle_first_mission_failure(const SystemModel& model, int grid) {
  Grid t(static_cast<std::size_t>(grid) + 1);
  for (int k = 0; k <= grid; ++k) t[k] = model.scenario.mission_hours * k / grid;
  return node_cdf(model.tree, model, t).back();
}

// ---- stepped iteration -----------------------------------------------------

SteppedRun stepped_iteration(const Simulator& sim, const Strategy& strategy, RngStream& rng) {
  SteppedRun out;
  auto& rec = out.record;
  rec.module_failures.assign(sim.modules().size(), 0);
  auto states = sim.initial_states(rng);
  const double tm = sim.mission_hours();

  auto counters = [&] {
    std::vector<int> v;
    for (const auto& s : states) {
      v.push_back(s.n_cm);
      v.push_back(s.n_pm);
      v.push_back(s.n_repairs);
    }
    return v;
  };

  for (int g = 1; g <= sim.missions(); ++g) {
    sim.assess_cbm(states, strategy, rng, g);
    const auto before = counters();
    ModuleAssessment a;
    if (sim.assess_starting_components(states)) {
      a = sim.assess_modules(states);
      sim.verify_component_failures(states, a);
    }
    if (counters() != before) out.counters_frozen_in_mission = false;

    const double end = a.system_failed() ? a.system_failure_time : tm;
    double first_failure = kNever;
    for (const auto& s : states) {
      if (!s.working) first_failure = std::min(first_failure, s.fail_time);
    }
    rec.system_operating_hours += end;
    if (first_failure < end) rec.degraded_hours += end - first_failure;
    if (a.system_failed()) {
      rec.system_failures += 1;
      rec.module_failures[a.failed_module] += 1;
      out.lost_hours += tm - end;
    } else {
      rec.missions_completed += 1;
    }
    sim.settle_mission(states, a, rng, g);
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    rec.cm.push_back(states[i].n_cm);
    rec.pm.push_back(states[i].n_pm);
    rec.component_operating_hours.push_back(states[i].total_op + states[i].t_op);
  }
  return out;
}

}  // namespace cbmsim::testing
