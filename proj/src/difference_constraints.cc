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

#include "periodic/difference_constraints.h"

namespace periodic {

std::optional<std::vector<Slot>> DifferenceSystem::solve(
    std::size_t reference) const {
  // Implicit source with 0-weight edges to every variable.
  std::vector<Slot> dist(num_vars_, 0);
  for (std::size_t round = 0; round <= num_vars_; ++round) {
    bool relaxed = false;
    for (const Edge& e : edges_) {
      if (dist[e.from] + e.weight < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.weight;
        relaxed = true;
      }
    }
    if (!relaxed) {
      const Slot base = dist[reference];
      for (Slot& d : dist) d -= base;
      return dist;
    }
  }
  return std::nullopt;
}

}  // namespace periodic
