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

#ifndef PERIODIC_PAZL_H_
#define PERIODIC_PAZL_H_

#include <cstdint>
#include <optional>

#include "periodic/model.h"

namespace periodic {

// Solvers for assignments without waiting times: every answer leaves the
// target as soon as the message arrives, so the backward slot of route i is
// fixed by its offset (m_i + R_i mod P). Deadlines play no role beyond
// R_i <= deadline_i.

struct PazlStats {
  std::uint64_t nodes = 0;
  std::uint64_t offsets_tried = 0;
};

struct PazlResult {
  enum class Outcome {
    kFound,    // `assignment` holds a valid zero-wait assignment
    kFailure,  // heuristic gave up; says nothing about existence
    kUnsat,    // exhaustive search proved there is none
  };
  Outcome outcome = Outcome::kFailure;
  std::optional<Assignment> assignment;
  // For kFailure: the first collision that stopped the heuristic.
  std::optional<Violation> blocking;
  PazlStats stats;

  bool found() const { return outcome == Outcome::kFound; }
};

// Copy of `inst` whose deadlines are exactly the round trips.
CanonicalStarInstance zero_wait_view(const CanonicalStarInstance& inst);

// Routes sorted by increasing round trip (ties by index), sent back to back:
// the k-th shortest gets offset k*tau. Always succeeds when
// n*tau + (R_max - R_min) <= P.
PazlResult shortest_longest(const CanonicalStarInstance& inst);

// Routes in input order, each taking the first free forward macro-slot
// (offsets k*tau) whose backward image is free. Always succeeds at load
// n*tau/P <= 1/3.
PazlResult greedy_macroslot(const CanonicalStarInstance& inst);

struct CompactSearchOptions {
  // 0 means unlimited; when the budget runs out the result is kFailure.
  std::uint64_t max_nodes = 0;
};

// Exhaustive search of compact assignments with route 0 at offset 0. Each
// assigned route may receive one route packed right after it in the forward
// period and one packed right after its answer in the backward period; the
// anchor is the smallest-index assigned route that can still receive one.
// Branches are cut when the free forward (or backward) gaps cannot hold the
// remaining messages. Returns kFound or kUnsat.
PazlResult compact_search(const CanonicalStarInstance& inst,
                          CompactSearchOptions options = {});

}  // namespace periodic

#endif  // PERIODIC_PAZL_H_
