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

#ifndef PERIODIC_SCHEDULING_H_
#define PERIODIC_SCHEDULING_H_

#include <optional>
#include <span>
#include <vector>

#include "periodic/model.h"

namespace periodic {

// Single machine, common processing time. A job may start at or after its
// release and must complete by its deadline.
struct Job {
  Slot release = 0;
  Slot deadline = 0;
};

using JobSet = std::vector<Job>;

struct Schedule {
  std::vector<Slot> starts;  // one per job, input order
  Slot makespan = 0;         // latest completion time
};

// Any feasible schedule, or nullopt iff none exists. Forbidden-region
// construction of Garey, Johnson, Simons and Tarjan (scaled from unit jobs
// to jobs of length `processing`), followed by earliest-deadline list
// scheduling that never starts a job inside a forbidden region.
std::optional<Schedule> feasible_schedule(std::span<const Job> jobs,
                                          Slot processing);

// Minimal Latency Scheduling: a feasible schedule minimizing the latest
// completion time, or nullopt iff none exists. Completions are also capped by
// `horizon` when given.
std::optional<Schedule> mls_schedule(std::span<const Job> jobs, Slot processing,
                                     std::optional<Slot> horizon = {});

// True iff `schedule` respects releases, deadlines and non-overlap.
bool is_feasible(std::span<const Job> jobs, Slot processing,
                 const Schedule& schedule);

}  // namespace periodic

#endif  // PERIODIC_SCHEDULING_H_
