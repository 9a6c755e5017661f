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

#include "cbmsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cbmsim {

using nlohmann::json;

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kStarting:
      return "starting";
    case Role::kColdSpare:
      return "cold-spare";
    case Role::kWarmSpare:
      return "warm-spare";
  }
  return "?";
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kBasic:
      return "BASIC";
    case GateKind::kOr:
      return "OR";
    case GateKind::kAnd:
      return "AND";
    case GateKind::kVoting:
      return "VOTING";
    case GateKind::kSpare:
      return "SPARE";
    case GateKind::kFdep:
      return "FDEP";
  }
  return "?";
}

GateNode GateNode::basic(int id) {
  GateNode n;
  n.kind = GateKind::kBasic;
  n.component = id;
  return n;
}

GateNode GateNode::gate(GateKind kind, std::vector<GateNode> children,
                        std::string label) {
  GateNode n;
  n.kind = kind;
  n.label = std::move(label);
  n.children = std::move(children);
  return n;
}

GateNode GateNode::voting(int k, std::vector<GateNode> children,
                          std::string label) {
  GateNode n = gate(GateKind::kVoting, std::move(children), std::move(label));
  n.k = k;
  return n;
}

GateNode GateNode::spare(GateNode primary, std::vector<GateNode> spares,
                         std::string label) {
  std::vector<GateNode> children;
  children.reserve(spares.size() + 1);
  children.push_back(std::move(primary));
  for (auto& s : spares) children.push_back(std::move(s));
  return gate(GateKind::kSpare, std::move(children), std::move(label));
}

GateNode GateNode::fdep(GateNode trigger, std::vector<GateNode> dependents,
                        std::string label) {
  std::vector<GateNode> children;
  children.reserve(dependents.size() + 1);
  children.push_back(std::move(trigger));
  for (auto& d : dependents) children.push_back(std::move(d));
  return gate(GateKind::kFdep, std::move(children), std::move(label));
}

int ScenarioConfig::missions() const {
  if (!(mission_hours > 0.0) || !(life_hours > 0.0)) return 0;
  const double ratio = life_hours / mission_hours;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) return 0;
  return static_cast<int>(rounded);
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << "; ";
    os << items[i];
  }
  return os.str();
}

class Parser {
 public:
  SystemModel run(std::string_view document) {
    json doc;
    try {
      doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
      throw ParseError({std::string("malformed document: ") + e.what()});
    }
    if (!doc.is_object()) throw ParseError({"document root must be an object"});
    for (const char* key : {"components", "tree", "scenario"}) {
      if (!doc.contains(key)) problems_.push_back(std::string("missing top-level key '") + key + "'");
    }
    if (!problems_.empty()) throw ParseError(problems_);

    SystemModel model;
    parse_components(doc["components"], model);
    parse_scenario(doc["scenario"], model.scenario);
    model.tree = parse_node(doc["tree"], "tree", model.components.size());
    if (!problems_.empty()) throw ParseError(problems_);
    return model;
  }

 private:
  template <typename T>
  std::optional<T> field(const json& obj, const char* key, const std::string& path,
                         bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) problems_.push_back(path + ": missing '" + key + "'");
      return std::nullopt;
    }
    try {
      return it->template get<T>();
    } catch (const json::exception&) {
      problems_.push_back(path + ": '" + key + "' has the wrong type");
      return std::nullopt;
    }
  }

  void parse_components(const json& arr, SystemModel& model) {
    if (!arr.is_array() || arr.empty()) {
      problems_.push_back("components: must be a non-empty array");
      return;
    }
    std::map<int, ComponentSpec> by_id;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "components[" + std::to_string(i) + "]";
      const json& c = arr[i];
      if (!c.is_object()) {
        problems_.push_back(path + ": must be an object");
        continue;
      }
      ComponentSpec spec;
      auto id = field<int>(c, "id", path);
      spec.label = field<std::string>(c, "label", path, false).value_or("");
      spec.shape = field<double>(c, "shape", path).value_or(0.0);
      spec.scale = field<double>(c, "scale", path).value_or(0.0);
      spec.cm_cost = field<double>(c, "cm_cost", path).value_or(0.0);
      spec.pm_cost = field<double>(c, "pm_cost", path).value_or(0.0);
      spec.cms_investment = field<double>(c, "cms_investment", path).value_or(0.0);
      spec.max_min_repairs = field<int>(c, "max_min_repairs", path).value_or(0);
      spec.failure_rate = field<double>(c, "failure_rate", path, false);

      const std::string role = field<std::string>(c, "role", path, false).value_or("starting");
      if (role == "starting") {
        spec.role = Role::kStarting;
      } else if (role == "cold-spare") {
        spec.role = Role::kColdSpare;
      } else if (role == "warm-spare") {
        spec.role = Role::kWarmSpare;
      } else {
        problems_.push_back(path + ": unknown role '" + role + "'");
      }
      auto q = field<double>(c, "dormancy", path, spec.role == Role::kWarmSpare);
      spec.dormancy = q.value_or(spec.role == Role::kColdSpare ? 0.0 : 1.0);

      if (!id) continue;
      spec.id = *id;
      if (!by_id.emplace(*id, spec).second) {
        problems_.push_back(path + ": duplicate component id " + std::to_string(*id));
      }
    }
    int expected = 1;
    for (auto& [id, spec] : by_id) {
      if (id != expected) {
        problems_.push_back("components: ids must be densely numbered 1..N (missing id " +
                            std::to_string(expected) + ")");
        break;
      }
      ++expected;
      model.components.push_back(std::move(spec));
    }
  }

  void parse_scenario(const json& s, ScenarioConfig& sc) {
    const std::string path = "scenario";
    if (!s.is_object()) {
      problems_.push_back("scenario: must be an object");
      return;
    }
    sc.life_hours = field<double>(s, "life_hours", path).value_or(0.0);
    sc.mission_hours = field<double>(s, "mission_hours", path).value_or(0.0);
    sc.iterations = field<int>(s, "iterations", path, false).value_or(1000);
    sc.system_failure_cost = field<double>(s, "system_failure_cost", path).value_or(0.0);
    sc.operating_value_per_hour = field<double>(s, "operating_value_per_hour", path).value_or(0.0);
    sc.degraded_factor = field<double>(s, "degraded_factor", path).value_or(0.0);
    sc.seed = field<std::uint64_t>(s, "seed", path, false).value_or(0);
    if (sc.missions() == 0) {
      problems_.push_back("scenario: life_hours / mission_hours must be a positive integer");
    }
  }

  GateNode parse_node(const json& n, const std::string& path, std::size_t n_comp) {
    GateNode node;
    if (!n.is_object()) {
      problems_.push_back(path + ": node must be an object");
      return node;
    }
    if (n.contains("basic")) {
      auto id = field<int>(n, "basic", path);
      node = GateNode::basic(id.value_or(0));
      if (id && (*id < 1 || static_cast<std::size_t>(*id) > n_comp)) {
        problems_.push_back(path + ": BASIC references unknown component " + std::to_string(*id));
      }
      return node;
    }
    auto kind = field<std::string>(n, "gate", path);
    if (!kind) return node;
    node.label = field<std::string>(n, "label", path, false).value_or("");

    auto children_of = [&](const char* key, const std::string& sub) {
      std::vector<GateNode> out;
      auto it = n.find(key);
      if (it == n.end() || !it->is_array()) {
        problems_.push_back(path + ": '" + key + "' must be an array");
        return out;
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        out.push_back(parse_node((*it)[i], path + "/" + sub + "[" + std::to_string(i) + "]", n_comp));
      }
      return out;
    };
    auto single = [&](const char* key) {
      auto it = n.find(key);
      if (it == n.end()) {
        problems_.push_back(path + ": missing '" + key + "'");
        return GateNode{};
      }
      return parse_node(*it, path + "/" + key, n_comp);
    };

    if (*kind == "OR" || *kind == "AND") {
      node = GateNode::gate(*kind == "OR" ? GateKind::kOr : GateKind::kAnd,
                            children_of("children", "children"), node.label);
    } else if (*kind == "VOTING") {
      auto k = field<int>(n, "k", path).value_or(0);
      node = GateNode::voting(k, children_of("children", "children"), node.label);
      if (k < 1 || static_cast<std::size_t>(k) > node.children.size()) {
        problems_.push_back(path + ": VOTING k=" + std::to_string(k) + " must lie in 1.." +
                            std::to_string(node.children.size()));
      }
    } else if (*kind == "SPARE") {
      GateNode primary = single("primary");
      node = GateNode::spare(std::move(primary), children_of("spares", "spares"), node.label);
    } else if (*kind == "FDEP") {
      GateNode trigger = single("trigger");
      node = GateNode::fdep(std::move(trigger), children_of("dependents", "dependents"),
                            node.label);
    } else if (*kind == "PAND" || *kind == "SEQ") {
      problems_.push_back(path + ": " + *kind + " gates are not supported (supported: OR, AND, "
                          "VOTING, SPARE, FDEP)");
    } else {
      problems_.push_back(path + ": unknown gate kind '" + *kind + "'");
    }
    return node;
  }

  std::vector<std::string> problems_;
};

json node_to_json(const GateNode& node) {
  if (node.is_basic()) return json{{"basic", node.component}};
  json j;
  j["gate"] = std::string(to_string(node.kind));
  if (!node.label.empty()) j["label"] = node.label;
  auto list = [](auto first, auto last) {
    json arr = json::array();
    for (auto it = first; it != last; ++it) arr.push_back(node_to_json(*it));
    return arr;
  };
  switch (node.kind) {
    case GateKind::kSpare:
      j["primary"] = node_to_json(node.children.at(0));
      j["spares"] = list(node.children.begin() + 1, node.children.end());
      break;
    case GateKind::kFdep:
      j["trigger"] = node_to_json(node.children.at(0));
      j["dependents"] = list(node.children.begin() + 1, node.children.end());
      break;
    case GateKind::kVoting:
      j["k"] = node.k;
      j["children"] = list(node.children.begin(), node.children.end());
      break;
    default:
      j["children"] = list(node.children.begin(), node.children.end());
  }
  return j;
}

void collect_leaves(const GateNode& node, std::vector<int>& out) {
  if (node.is_basic()) {
    out.push_back(node.component);
    return;
  }
  for (const auto& c : node.children) collect_leaves(c, out);
}

}  // namespace

ParseError::ParseError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

SystemModel parse_system(std::string_view document) { return Parser{}.run(document); }

std::string serialize_system(const SystemModel& model) {
  json doc;
  json comps = json::array();
  for (const auto& c : model.components) {
    json j{{"id", c.id},
           {"label", c.label},
           {"role", std::string(to_string(c.role))},
           {"shape", c.shape},
           {"scale", c.scale},
           {"dormancy", c.dormancy},
           {"cm_cost", c.cm_cost},
           {"pm_cost", c.pm_cost},
           {"cms_investment", c.cms_investment},
           {"max_min_repairs", c.max_min_repairs}};
    if (c.failure_rate) j["failure_rate"] = *c.failure_rate;
    comps.push_back(std::move(j));
  }
  doc["components"] = std::move(comps);
  doc["tree"] = node_to_json(model.tree);
  const auto& s = model.scenario;
  doc["scenario"] = json{{"life_hours", s.life_hours},
                         {"mission_hours", s.mission_hours},
                         {"iterations", s.iterations},
                         {"system_failure_cost", s.system_failure_cost},
                         {"operating_value_per_hour", s.operating_value_per_hour},
                         {"degraded_factor", s.degraded_factor},
                         {"seed", s.seed}};
  return doc.dump(2);
}

std::vector<int> leaf_ids(const GateNode& node) {
  std::vector<int> out;
  collect_leaves(node, out);
  return out;
}

ValidationReport validate(const SystemModel& model) {
  ValidationReport report;
  auto add = [&](std::string path, std::string msg) {
    report.push_back({std::move(path), std::move(msg)});
  };
  const std::size_t n = model.components.size();
  if (n == 0) add("components", "system has no components");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = model.components[i];
    const std::string path = "components[" + std::to_string(i) + "] (id " + std::to_string(c.id) + ")";
    if (c.id != static_cast<int>(i) + 1) add(path, "ids must be densely numbered 1..N");
    if (!(c.shape > 0.0)) add(path, "shape must be > 0");
    if (!(c.scale > 0.0)) add(path, "scale must be > 0");
    if (c.cm_cost < 0.0 || c.pm_cost < 0.0 || c.cms_investment < 0.0) add(path, "costs must be >= 0");
    if (c.pm_cost > c.cm_cost) add(path, "PM cost must not exceed CM cost");
    if (c.max_min_repairs < 0) add(path, "max_min_repairs must be >= 0");
    if (c.dormancy < 0.0 || c.dormancy > 1.0) add(path, "dormancy must lie in [0,1]");
    if (c.role == Role::kColdSpare && c.dormancy != 0.0) add(path, "cold-spare must have q=0");
    if (c.role == Role::kWarmSpare && !(c.dormancy > 0.0 && c.dormancy < 1.0)) {
      add(path, "warm-spare must have 0<q<1");
    }
  }

  const auto& s = model.scenario;
  if (s.missions() == 0) add("scenario", "life_hours / mission_hours must be a positive integer");
  if (s.iterations < 1) add("scenario", "iterations must be >= 1");
  if (s.degraded_factor < 0.0 || s.degraded_factor > 1.0) add("scenario", "degraded_factor must lie in [0,1]");
  if (s.system_failure_cost < 0.0 || s.operating_value_per_hour < 0.0) add("scenario", "costs must be >= 0");

  std::map<int, std::string> seen;  // component id -> first leaf path
  std::set<int> as_spare;
  std::function<void(const GateNode&, const std::string&, bool)> walk =
      [&](const GateNode& node, const std::string& path, bool spare_slot) {
        if (node.is_basic()) {
          const int id = node.component;
          if (id < 1 || static_cast<std::size_t>(id) > n) {
            add(path, "BASIC references unknown component " + std::to_string(id));
            return;
          }
          auto [it, fresh] = seen.emplace(id, path);
          if (!fresh) add(path, "duplicate leaf: component " + std::to_string(id) + " also at " + it->second);
          const Role role = model.component(id).role;
          if (spare_slot) {
            as_spare.insert(id);
            if (role == Role::kStarting) add(path, "SPARE spares must be cold-spare or warm-spare components");
          } else if (role != Role::kStarting) {
            add(path, "spare component " + std::to_string(id) + " must appear as a SPARE spare");
          }
          return;
        }
        if (spare_slot) add(path, "SPARE spares must be BASIC components");
        const auto& ch = node.children;
        switch (node.kind) {
          case GateKind::kOr:
          case GateKind::kAnd:
            if (ch.empty()) add(path, std::string(to_string(node.kind)) + " gate needs children");
            break;
          case GateKind::kVoting:
            if (node.k < 1 || static_cast<std::size_t>(node.k) > ch.size()) {
              add(path, "VOTING k must lie in 1..number of children");
            }
            break;
          case GateKind::kSpare:
            if (ch.size() < 2) add(path, "SPARE gate needs a primary and at least one spare");
            break;
          case GateKind::kFdep:
            if (ch.size() < 2) add(path, "FDEP gate needs a trigger and at least one dependent");
            break;
          case GateKind::kBasic:
            break;
        }
        for (std::size_t i = 0; i < ch.size(); ++i) {
          std::string sub;
          bool child_spare = false;
          if (node.kind == GateKind::kSpare) {
            sub = i == 0 ? "/primary" : "/spares[" + std::to_string(i - 1) + "]";
            child_spare = i > 0;
          } else if (node.kind == GateKind::kFdep) {
            sub = i == 0 ? "/trigger" : "/dependents[" + std::to_string(i - 1) + "]";
          } else {
            sub = "/children[" + std::to_string(i) + "]";
          }
          walk(ch[i], path + sub, child_spare);
        }
      };
  walk(model.tree, "tree", false);

  for (const auto& c : model.components) {
    if (!seen.count(c.id)) add("tree", "component " + std::to_string(c.id) + " is not referenced by any BASIC leaf");
  }
  return report;
}

}  // namespace cbmsim
