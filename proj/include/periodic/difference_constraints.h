// Copyright 2026 The periodic Authors
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

#ifndef PERIODIC_DIFFERENCE_CONSTRAINTS_H_
#define PERIODIC_DIFFERENCE_CONSTRAINTS_H_

#include <optional>
#include <vector>

#include "periodic/model.h"

namespace periodic {

// System of constraints x_to - x_from <= bound over integer variables.
// Feasibility is decided by Bellman-Ford on the constraint graph: the system
// is infeasible iff the graph has a negative cycle, and otherwise the
// shortest-path potentials are an integral solution.
class DifferenceSystem {
 public:
  explicit DifferenceSystem(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }

  // x_to - x_from <= bound.
  void add(std::size_t to, std::size_t from, Slot bound) {
    edges_.push_back({from, to, bound});
  }
  // x_var == value relative to the reference variable.
  void fix(std::size_t var, std::size_t reference, Slot value) {
    add(var, reference, value);
    add(reference, var, -value);
  }

  void clear() { edges_.clear(); }

  // Solution with x_reference == 0, or nullopt if infeasible.
  std::optional<std::vector<Slot>> solve(std::size_t reference) const;

 private:
  struct Edge {
    std::size_t from;
    std::size_t to;
    Slot weight;
  };
  std::size_t num_vars_;
  std::vector<Edge> edges_;
};

}  // namespace periodic

#endif  // PERIODIC_DIFFERENCE_CONSTRAINTS_H_
