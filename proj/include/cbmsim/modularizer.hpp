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

#ifndef CBMSIM_MODULARIZER_HPP
#define CBMSIM_MODULARIZER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "cbmsim/model.hpp"

namespace cbmsim {

/// An independent subtree whose failure alone fails the top event.
struct ModuleDef {
  int index = 0;             // 1-based
  std::vector<int> members;  // sorted component ids
  const GateNode* subtree = nullptr;
  /// Label of the top-level branch (child of the root) containing the module,
  /// or the root label when the root itself is not an OR gate.
  std::string branch;
};

class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(int component, const std::string& what)
      : std::runtime_error(what), component_(component) {}
  int component() const { return component_; }

 private:
  int component_;
};

/// Splits the tree into modules: every non-OR node reachable from the root
/// through OR gates only roots a module. Modules are numbered in depth-first
/// order of their roots, so a tree written in figure order reproduces the
/// figure's numbering. Throws DecompositionError when two modules share a
/// component. The returned subtree pointers borrow from `model`.
std::vector<ModuleDef> decompose(const SystemModel& model);

/// critical[i-1] is true iff component i forms a singleton module.
std::vector<bool> critical_components(const std::vector<ModuleDef>& modules,
                                      std::size_t n_components);

/// Static (order-free) evaluation: does the node fail when exactly the
/// components with failed[id-1] set are down? SPARE fails when the primary
/// and all spares are down; FDEP when any input is down.
bool static_fails(const GateNode& node, const std::vector<bool>& failed);

}  // namespace cbmsim

#endif  // CBMSIM_MODULARIZER_HPP
