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

#include "periodic/statmux.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "periodic/rng.h"

namespace periodic {

namespace {

struct Message {
  Slot arrival;
  std::size_t route;
  std::size_t period;
};

// Serves `queue` first come first served on one arc; returns start times in
// the order of `queue` after sorting.
void serve_fifo(std::vector<Message>& queue, Slot tau,
                std::vector<Slot>& starts) {
  std::sort(queue.begin(), queue.end(), [](const Message& a, const Message& b) {
    return std::tie(a.arrival, a.route, a.period) <
           std::tie(b.arrival, b.route, b.period);
  });
  starts.resize(queue.size());
  Slot free_at = std::numeric_limits<Slot>::min();
  for (std::size_t k = 0; k < queue.size(); ++k) {
    starts[k] = std::max(queue[k].arrival, free_at);
    free_at = starts[k] + tau;
  }
}

}  // namespace

SimReport simulate_statmux(const RawStarInstance& raw,
                           std::span<const Slot> offsets, std::size_t periods,
                           std::span<const Slot> waits) {
  raw.check();
  const std::size_t n = raw.size();
  if (periods == 0) throw std::invalid_argument("need at least one period");
  if (offsets.size() != n) {
    throw std::invalid_argument("need one offset per route");
  }
  if (!waits.empty() && waits.size() != n) {
    throw std::invalid_argument("need one waiting time per route");
  }
  const Slot P = raw.period;
  const Slot c = raw.central_weight;
  auto emission = [&](const Message& msg) {
    return offsets[msg.route] + static_cast<Slot>(msg.period) * P;
  };

  std::vector<Message> queue;
  queue.reserve(n * periods);
  for (std::size_t k = 0; k < periods; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Slot e = offsets[i] + static_cast<Slot>(k) * P;
      queue.push_back({e + raw.source_weights[i], i, k});
    }
  }
  std::vector<Slot> starts;
  serve_fifo(queue, raw.tau, starts);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const std::size_t i = queue[k].route;
    queue[k].arrival = starts[k] + c + 2 * raw.tail_weights[i] +
                       (waits.empty() ? 0 : waits[i]);
  }
  serve_fifo(queue, raw.tau, starts);

  // Process time of every message, indexed by period.
  std::vector<std::vector<Slot>> pt(periods, std::vector<Slot>(n));
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const Message& msg = queue[k];
    pt[msg.period][msg.route] =
        starts[k] + c + raw.source_weights[msg.route] - emission(msg);
  }

  SimReport report;
  report.periods = periods;
  report.max_process_time.assign(n, std::numeric_limits<Slot>::min());
  Slot overall = std::numeric_limits<Slot>::min();
  for (std::size_t k = 0; k < periods; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      report.max_process_time[i] = std::max(report.max_process_time[i], pt[k][i]);
      if (pt[k][i] > overall) {
        overall = pt[k][i];
        report.stable_period = k + 1;
      }
    }
  }
  report.margin = overall - 2 * raw.longest_route();
  return report;
}

std::vector<Slot> random_offsets(const RawStarInstance& raw,
                                 std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Slot> offsets(raw.size());
  for (Slot& m : offsets) m = rng.uniform(0, raw.period - 1);
  return offsets;
}

}  // namespace periodic
