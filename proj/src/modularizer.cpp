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

#include "cbmsim/modularizer.hpp"

#include <algorithm>
#include <map>

namespace cbmsim {

namespace {

void collect_modules(const GateNode& node, const std::string& branch,
                     std::vector<ModuleDef>& out) {
  if (node.kind == GateKind::kOr) {
    for (const auto& child : node.children) collect_modules(child, branch, out);
    return;
  }
  ModuleDef m;
  m.index = static_cast<int>(out.size()) + 1;
  m.members = leaf_ids(node);
  std::sort(m.members.begin(), m.members.end());
  m.subtree = &node;
  m.branch = branch;
  out.push_back(std::move(m));
}

}  // namespace

std::vector<ModuleDef> decompose(const SystemModel& model) {
  std::vector<ModuleDef> modules;
  const GateNode& root = model.tree;
  if (root.kind == GateKind::kOr) {
    for (std::size_t i = 0; i < root.children.size(); ++i) {
      const GateNode& child = root.children[i];
      std::string branch = child.label;
      if (branch.empty()) branch = "branch " + std::to_string(i + 1);
      collect_modules(child, branch, modules);
    }
  } else {
    collect_modules(root, root.label.empty() ? "system" : root.label, modules);
  }

  std::map<int, int> owner;  // component -> module index
  for (const auto& m : modules) {
    for (int id : m.members) {
      auto [it, fresh] = owner.emplace(id, m.index);
      if (!fresh && it->second != m.index) {
        throw DecompositionError(
            id, "tree is not an OR-composition of independent subtrees: component " +
                    std::to_string(id) + " is shared by modules " + std::to_string(it->second) +
                    " and " + std::to_string(m.index));
      }
    }
  }
  return modules;
}

std::vector<bool> critical_components(const std::vector<ModuleDef>& modules,
                                      std::size_t n_components) {
  std::vector<bool> critical(n_components, false);
  for (const auto& m : modules) {
    if (m.members.size() == 1 && m.members[0] >= 1 &&
        static_cast<std::size_t>(m.members[0]) <= n_components) {
      critical[m.members[0] - 1] = true;
    }
  }
  return critical;
}

bool static_fails(const GateNode& node, const std::vector<bool>& failed) {
  const auto& ch = node.children;
  auto down = [&](const GateNode& c) { return static_fails(c, failed); };
  switch (node.kind) {
    case GateKind::kBasic:
      return failed.at(node.component - 1);
    case GateKind::kOr:
    case GateKind::kFdep:
      return std::any_of(ch.begin(), ch.end(), down);
    case GateKind::kAnd:
    case GateKind::kSpare:
      return std::all_of(ch.begin(), ch.end(), down);
    case GateKind::kVoting:
      return std::count_if(ch.begin(), ch.end(), down) >= node.k;
  }
  return false;
}

}  // namespace cbmsim
