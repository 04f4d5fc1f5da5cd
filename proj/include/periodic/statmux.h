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

#ifndef PERIODIC_STATMUX_H_
#define PERIODIC_STATMUX_H_

#include <cstddef>
#include <span>
#include <vector>

#include "periodic/model.h"

namespace periodic {

struct SimReport {
  std::vector<Slot> max_process_time;  // per route, over all periods
  Slot margin = 0;  // max process time - 2 * longest route
  // Number of periods after which the overall maximum no longer grew.
  std::size_t stable_period = 0;
  std::size_t periods = 0;
};

// Discrete-event simulation of the star with FIFO buffers in front of both
// central arcs. Route i emits a tau-slot message at raw offset offsets[i] of
// every period; a message occupies an arc for tau consecutive slots and
// simultaneous arrivals are served by increasing route index. The answer
// leaves t_i after waits[i] slots (none when `waits` is empty). Process times
// are measured first slot to first slot.
SimReport simulate_statmux(const RawStarInstance& raw,
                           std::span<const Slot> offsets, std::size_t periods,
                           std::span<const Slot> waits = {});

// Offsets drawn uniformly and independently in [0, P).
std::vector<Slot> random_offsets(const RawStarInstance& raw,
                                 std::uint64_t seed);

}  // namespace periodic

#endif  // PERIODIC_STATMUX_H_
