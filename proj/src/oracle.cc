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

#include "periodic/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace periodic {

void Oracle::require(long double candidates, const char* what) const {
  if (candidates > static_cast<long double>(budget_)) {
    throw BudgetExceeded(std::string(what) + ": " +
                         std::to_string(static_cast<double>(candidates)) +
                         " candidates exceed the budget of " +
                         std::to_string(budget_));
  }
}

namespace {

// Depth-first enumeration of (offset, wait) pairs route by route.
class Enumerator {
 public:
  Enumerator(const CanonicalStarInstance& inst,
             std::vector<std::vector<Slot>> offset_domain,
             std::vector<std::vector<Slot>> wait_domain)
      : inst_(inst),
        offset_domain_(std::move(offset_domain)),
        wait_domain_(std::move(wait_domain)),
        offsets_(inst.size()),
        waits_(inst.size()) {}

  std::optional<Assignment> run() {
    if (!extend(0)) return std::nullopt;
    return Assignment{offsets_, waits_};
  }

 private:
  bool compatible(std::size_t i) const {
    const Slot P = inst_.period;
    const Slot back_i = offsets_[i] + inst_.round_trip[i] + waits_[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (cyclic_overlap(offsets_[i], offsets_[j], P, inst_.tau)) return false;
      const Slot back_j = offsets_[j] + inst_.round_trip[j] + waits_[j];
      if (cyclic_overlap(back_i, back_j, P, inst_.tau)) return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == inst_.size()) return is_valid(inst_, {offsets_, waits_});
    for (const Slot m : offset_domain_[i]) {
      offsets_[i] = m;
      for (const Slot w : wait_domain_[i]) {
        if (inst_.round_trip[i] + w > inst_.deadline[i]) break;
        waits_[i] = w;
        if (compatible(i) && extend(i + 1)) return true;
      }
    }
    return false;
  }

  const CanonicalStarInstance& inst_;
  std::vector<std::vector<Slot>> offset_domain_;
  std::vector<std::vector<Slot>> wait_domain_;
  std::vector<Slot> offsets_;
  std::vector<Slot> waits_;
};

std::vector<Slot> range(Slot end) {
  std::vector<Slot> values(static_cast<std::size_t>(std::max<Slot>(end, 0)));
  std::iota(values.begin(), values.end(), Slot{0});
  return values;
}

OracleVerdict verdict(std::optional<Assignment> witness) {
  OracleVerdict v;
  v.sat = witness.has_value();
  v.witness = std::move(witness);
  return v;
}

}  // namespace

OracleVerdict Oracle::brute_pazl(const CanonicalStarInstance& inst) const {
  inst.check();
  const std::size_t n = inst.size();
  require(std::pow(static_cast<long double>(inst.period), n), "brute_pazl");
  CanonicalStarInstance zero_wait = inst;
  zero_wait.deadline = inst.round_trip;
  std::vector<std::vector<Slot>> offsets(n, range(inst.period));
  std::vector<std::vector<Slot>> waits(n, std::vector<Slot>{0});
  return verdict(Enumerator(zero_wait, offsets, waits).run());
}

OracleVerdict Oracle::brute_pall(const CanonicalStarInstance& inst) const {
  inst.check();
  const std::size_t n = inst.size();
  require(std::pow(static_cast<long double>(inst.period), 2 * n - 1),
          "brute_pall");
  std::vector<std::vector<Slot>> offsets(n, range(inst.period));
  offsets[0] = {0};
  std::vector<std::vector<Slot>> waits(n, range(inst.period));
  return verdict(Enumerator(inst, offsets, waits).run());
}

OracleVerdict Oracle::brute_bra(const CanonicalStarInstance& inst,
                                std::span<const Slot> offsets) const {
  inst.check();
  const std::size_t n = inst.size();
  if (offsets.size() != n) {
    throw std::invalid_argument("brute_bra: need one offset per route");
  }
  require(std::pow(static_cast<long double>(inst.period), n), "brute_bra");
  std::vector<std::vector<Slot>> fixed(n);
  for (std::size_t i = 0; i < n; ++i) fixed[i] = {offsets[i]};
  std::vector<std::vector<Slot>> waits(n, range(inst.period));
  return verdict(Enumerator(inst, fixed, waits).run());
}

ScheduleVerdict Oracle::brute_schedule(std::span<const Job> jobs,
                                       Slot processing) const {
  const std::size_t n = jobs.size();
  long double orders = 1;
  for (std::size_t k = 2; k <= n; ++k) orders *= k;
  require(orders, "brute_schedule");

  ScheduleVerdict best;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Slot> starts(n);
  do {
    Slot free_at = std::numeric_limits<Slot>::min();
    bool ok = true;
    for (const std::size_t j : order) {
      const Slot s = std::max(free_at, jobs[j].release);
      if (s + processing > jobs[j].deadline) {
        ok = false;
        break;
      }
      starts[j] = s;
      free_at = s + processing;
    }
    if (!ok) continue;
    const Slot makespan = n == 0 ? 0 : free_at;
    if (!best.sat || makespan < best.witness->makespan) {
      best.sat = true;
      best.witness = Schedule{starts, makespan};
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace periodic
