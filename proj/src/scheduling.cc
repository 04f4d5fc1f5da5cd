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

#include "periodic/scheduling.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace periodic {
namespace {

// Open interval (low, high): no job may start strictly inside it.
struct ForbiddenRegion {
  Slot low;
  Slot high;
};

class RegionSet {
 public:
  void add(Slot low, Slot high) { regions_.push_back({low, high}); }

  // Latest start <= t outside every region.
  Slot latest_allowed(Slot t) const {
    for (bool moved = true; moved;) {
      moved = false;
      for (const auto& r : regions_) {
        if (r.low < t && t < r.high) {
          t = r.low;
          moved = true;
        }
      }
    }
    return t;
  }

  // Earliest start >= t outside every region.
  Slot earliest_allowed(Slot t) const {
    for (bool moved = true; moved;) {
      moved = false;
      for (const auto& r : regions_) {
        if (r.low < t && t < r.high) {
          t = r.high;
          moved = true;
        }
      }
    }
    return t;
  }

 private:
  std::vector<ForbiddenRegion> regions_;
};

// Earliest-deadline list scheduling that never starts inside a region; with
// no regions it never idles while a job is waiting. Jobs never overlap, so
// the schedule is feasible iff `on_time` stays set.
Schedule list_schedule(std::span<const Job> jobs, Slot processing,
                       const RegionSet& regions, bool& on_time) {
  const std::size_t n = jobs.size();
  std::vector<std::size_t> by_release(n);
  std::iota(by_release.begin(), by_release.end(), std::size_t{0});
  std::stable_sort(by_release.begin(), by_release.end(),
                   [&](std::size_t a, std::size_t b) {
                     return jobs[a].release < jobs[b].release;
                   });
  auto later = [&](std::size_t a, std::size_t b) {
    return jobs[a].deadline != jobs[b].deadline
               ? jobs[a].deadline > jobs[b].deadline
               : a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)>
      ready(later);

  Schedule schedule;
  schedule.starts.assign(n, 0);
  on_time = true;
  std::size_t next = 0;
  Slot t = std::numeric_limits<Slot>::min();
  for (std::size_t placed = 0; placed < n;) {
    if (ready.empty()) t = std::max(t, jobs[by_release[next]].release);
    while (next < n && jobs[by_release[next]].release <= t) {
      ready.push(by_release[next++]);
    }
    const Slot allowed = regions.earliest_allowed(t);
    if (allowed != t) {
      t = allowed;
      continue;
    }
    const std::size_t pick = ready.top();
    ready.pop();
    schedule.starts[pick] = t;
    if (t + processing > jobs[pick].deadline) on_time = false;
    ++placed;
    t += processing;
  }
  for (const Slot s : schedule.starts) {
    schedule.makespan = std::max(schedule.makespan, s + processing);
  }
  return schedule;
}

}  // namespace

std::optional<Schedule> feasible_schedule(std::span<const Job> jobs,
                                          Slot processing) {
  if (processing < 1) throw std::invalid_argument("processing time < 1");
  const std::size_t n = jobs.size();
  if (n == 0) return Schedule{};
  for (const Job& j : jobs) {
    if (j.deadline < j.release + processing) return std::nullopt;
  }

  RegionSet regions;
  {
    bool on_time = false;
    Schedule plain = list_schedule(jobs, processing, regions, on_time);
    if (on_time) return plain;
  }

  std::vector<std::size_t> by_release(n);
  std::iota(by_release.begin(), by_release.end(), std::size_t{0});
  std::sort(by_release.begin(), by_release.end(),
            [&](std::size_t a, std::size_t b) {
              return jobs[a].release > jobs[b].release;
            });
  std::vector<Slot> dues;
  for (const Job& j : jobs) dues.push_back(j.deadline);
  std::sort(dues.begin(), dues.end());
  dues.erase(std::unique(dues.begin(), dues.end()), dues.end());
  // back[d]: latest start of the jobs seen so far that are due by dues[d],
  // when they are packed as late as possible. Releases are visited in
  // decreasing order, so regions added later lie below every start already
  // placed and each new job costs one more step.
  std::vector<Slot> back = dues;
  std::size_t first_active = dues.size();
  for (std::size_t k = 0; k < n;) {
    const Slot release = jobs[by_release[k]].release;
    for (; k < n && jobs[by_release[k]].release == release; ++k) {
      const auto d = static_cast<std::size_t>(
          std::lower_bound(dues.begin(), dues.end(), jobs[by_release[k]].deadline) -
          dues.begin());
      for (std::size_t e = d; e < dues.size(); ++e) {
        back[e] = regions.latest_allowed(back[e] - processing);
      }
      first_active = std::min(first_active, d);
    }
    const Slot critical =
        *std::min_element(back.begin() + first_active, back.end());
    if (critical < release) return std::nullopt;
    if (critical < release + processing) {
      regions.add(critical - processing, release);
    }
  }

  bool on_time = false;
  Schedule schedule = list_schedule(jobs, processing, regions, on_time);
  if (!on_time) return std::nullopt;
  return schedule;
}

std::optional<Schedule> mls_schedule(std::span<const Job> jobs, Slot processing,
                                     std::optional<Slot> horizon) {
  std::vector<Job> capped(jobs.begin(), jobs.end());
  if (horizon) {
    for (Job& j : capped) j.deadline = std::min(j.deadline, *horizon);
  }
  auto best = feasible_schedule(capped, processing);
  if (!best || capped.empty()) return best;

  // No schedule ends before the one that never idles while a job waits.
  std::vector<Slot> releases;
  releases.reserve(capped.size());
  for (const Job& j : capped) releases.push_back(j.release);
  std::sort(releases.begin(), releases.end());
  Slot lower = std::numeric_limits<Slot>::min();
  for (const Slot r : releases) lower = std::max(lower, r) + processing;
  if (best->makespan == lower) return best;

  // Shifting every job of a feasible schedule as early as its order allows
  // keeps it feasible, so the optimal makespan is some release + k * processing.
  std::vector<Slot> candidates;
  for (const Job& j : capped) {
    for (std::size_t k = 1; k <= capped.size(); ++k) {
      const Slot c = j.release + static_cast<Slot>(k) * processing;
      if (c >= lower && c < best->makespan) candidates.push_back(c);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  // Invariant: every candidate at index >= high is feasible, < low infeasible.
  std::size_t low = 0, high = candidates.size();
  std::vector<Job> trial = capped;
  while (low < high) {
    const std::size_t mid = low + (high - low) / 2;
    for (std::size_t k = 0; k < trial.size(); ++k) {
      trial[k].deadline = std::min(capped[k].deadline, candidates[mid]);
    }
    if (auto s = feasible_schedule(trial, processing)) {
      high = std::lower_bound(candidates.begin(), candidates.end(), s->makespan) -
             candidates.begin();
      best = std::move(s);
    } else {
      low = mid + 1;
    }
  }
  return best;
}

bool is_feasible(std::span<const Job> jobs, Slot processing,
                 const Schedule& schedule) {
  if (schedule.starts.size() != jobs.size()) return false;
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return schedule.starts[a] < schedule.starts[b];
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t j = order[k];
    const Slot s = schedule.starts[j];
    if (s < jobs[j].release || s + processing > jobs[j].deadline) return false;
    if (k + 1 < order.size() && s + processing > schedule.starts[order[k + 1]]) {
      return false;
    }
  }
  return true;
}

}  // namespace periodic
