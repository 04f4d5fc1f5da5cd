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

#ifndef PERIODIC_ORACLE_H_
#define PERIODIC_ORACLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "periodic/model.h"
#include "periodic/scheduling.h"

namespace periodic {

// Thrown when an enumeration would exceed the oracle's candidate budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleVerdict {
  bool sat = false;
  std::optional<Assignment> witness;
};

struct ScheduleVerdict {
  bool sat = false;
  std::optional<Schedule> witness;  // minimal makespan
};

// Exhaustive reference solvers for tiny instances. Each one checks the size
// of its search space against the budget before starting and refuses rather
// than truncate. Partial candidates are abandoned as soon as two of their
// routes collide; every witness is re-checked by validate_pall.
class Oracle {
 public:
  explicit Oracle(std::uint64_t budget = 10'000'000) : budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

  // All offset vectors in [0,P)^n with zero waiting times. P^n candidates.
  OracleVerdict brute_pazl(const CanonicalStarInstance& inst) const;

  // m_0 = 0, other offsets in [0,P), waiting times in [0,P). P^(2n-1)
  // candidates. Any assignment can be rotated to m_0 = 0 and any waiting time
  // reduced modulo P without creating a collision or missing a deadline.
  OracleVerdict brute_pall(const CanonicalStarInstance& inst) const;

  // Waiting times in [0,P)^n for fixed forward offsets. P^n candidates.
  OracleVerdict brute_bra(const CanonicalStarInstance& inst,
                          std::span<const Slot> offsets) const;

  // Every job order, each job started as early as its predecessor allows.
  // n! candidates.
  ScheduleVerdict brute_schedule(std::span<const Job> jobs,
                                 Slot processing) const;

 private:
  void require(long double candidates, const char* what) const;

  std::uint64_t budget_;
};

}  // namespace periodic

#endif  // PERIODIC_ORACLE_H_
