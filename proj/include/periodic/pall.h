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

#ifndef PERIODIC_PALL_H_
#define PERIODIC_PALL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "periodic/model.h"
#include "periodic/rng.h"

namespace periodic {

// ---------------------------------------------------------------------------
// Stage 1: forward offsets.

enum class OrderKind {
  kLSR,   // decreasing route length a_i + c + b_i
  kSLR,   // increasing route length
  kLSA,   // decreasing tail weight b_i
  kSLA,   // increasing tail weight
  kRO,    // random order, packed
  kRORS,  // random order, random gaps
  kROBS,  // random order, equal gaps
};

std::optional<OrderKind> parse_order_kind(const std::string& text);
std::string to_string(OrderKind kind);
bool is_random(OrderKind kind);

struct OrderPolicy {
  OrderKind kind = OrderKind::kRO;
  std::uint64_t seed = 0;
};

// Sending order under `kind`; ties by route index. Random kinds draw a
// permutation from `rng`, the others leave it untouched.
std::vector<std::size_t> sending_order(const RawStarInstance& raw,
                                       OrderKind kind, SplitMix64& rng);

// Canonical forward offsets of routes sent in `order`. Packed for every kind
// but kRORS (uniform weak composition of the P - n*tau free slots, drawn from
// `rng`) and kROBS (equal gaps, remainder to the first gaps).
std::vector<Slot> offsets_from_order(std::span<const std::size_t> order,
                                     OrderKind kind, Slot period, Slot tau,
                                     SplitMix64& rng);

// Successive forward offset vectors under one policy. Permutations and gaps
// come from two separate streams, so RO, RORS and ROBS with the same seed
// send the routes in the same orders.
class OrderStream {
 public:
  OrderStream(const RawStarInstance& raw, OrderKind kind, std::uint64_t seed);
  std::vector<Slot> next();

 private:
  const RawStarInstance& raw_;
  OrderKind kind_;
  SplitMix64 order_rng_;
  SplitMix64 gap_rng_;
};

// First draw of an OrderStream. Throws if n*tau > P.
std::vector<Slot> forward_offsets(const RawStarInstance& raw,
                                  OrderPolicy policy);

// ---------------------------------------------------------------------------
// Stage 2: waiting times for fixed forward offsets.

enum class BackwardAlgo { kGD, kMLS, kPMLS, kFPTPMLS };

std::optional<BackwardAlgo> parse_backward_algo(const std::string& text);
std::string to_string(BackwardAlgo algo);

enum class StageFailure {
  kNone,
  kNoFreeInterval,    // GD: no tau free backward slots left
  kDeadlineExceeded,  // GD: earliest free slot is past the deadline
  kInfeasible,        // scheduling problem has no solution
  kCollision,         // schedule found but collides modulo P
};

std::string to_string(StageFailure failure);

struct WaitResult {
  std::vector<Slot> waits;
  StageFailure failure = StageFailure::kNone;
  std::size_t route = 0;  // culprit for kNoFreeInterval / kDeadlineExceeded

  bool ok() const { return failure == StageFailure::kNone; }
};

// Greedy deadline: answers cross the backward central arc in time order;
// whenever the arc has tau free slots (modulo P), the eligible route with the
// earliest absolute deadline goes first.
WaitResult greedy_deadline(const CanonicalStarInstance& inst,
                           std::span<const Slot> offsets);

// Release times m_i + R_i and deadlines m_i + deadline_i scheduled by
// mls_schedule() without regard to periodicity; fails with kCollision when
// the resulting crossings overlap modulo P.
WaitResult mls_backward(const CanonicalStarInstance& inst,
                        std::span<const Slot> offsets);

// For each anchor route, rebases time on its release, folds every release
// into one period and caps start deadlines at P - tau, so that any schedule
// found by MLS is periodic. First anchor that succeeds wins.
WaitResult pmls(const CanonicalStarInstance& inst,
                std::span<const Slot> offsets);

// PMLS plus, for each anchor, every subset of routes that can cross in the
// following period. Complete for fixed forward offsets.
WaitResult fpt_pmls(const CanonicalStarInstance& inst,
                    std::span<const Slot> offsets);

WaitResult solve_backward(BackwardAlgo algo, const CanonicalStarInstance& inst,
                          std::span<const Slot> offsets);

// ---------------------------------------------------------------------------
// Whole-instance solvers.

struct PallResult {
  enum class Outcome { kFound, kFailure, kUnsat };
  Outcome outcome = Outcome::kFailure;
  std::optional<Assignment> assignment;
  std::string reason;
  std::uint64_t systems = 0;

  bool found() const { return outcome == Outcome::kFound; }
};

// Exact decision by enumeration of forward orders (route 0 first, at 0),
// backward orders of the crossing residues and wrap multiplicities, each
// giving a difference-constraint system. Throws std::invalid_argument when
// n > max_n.
PallResult fpt_pall(const CanonicalStarInstance& inst, std::size_t max_n = 5);

// Every answer is delayed to behave like the one of the longest (unfolded)
// round trip: m_i = i*tau, w_i = L_max - L_i, all process times equal.
PallResult align_longest(const CanonicalStarInstance& inst);

struct OrdersResult {
  std::optional<Assignment> assignment;  // canonical frame
  std::size_t orders_tried = 0;
  std::optional<std::size_t> success_order;
};

// Draws up to `num_orders` forward offset vectors under `kind` and returns
// the first stage-2 assignment that validates. Deterministic kinds are tried
// once. Deterministic given `seed`.
OrdersResult solve_with_orders(const RawStarInstance& raw, BackwardAlgo algo,
                               OrderKind kind, std::size_t num_orders,
                               std::uint64_t seed);
OrdersResult solve_with_orders(const CanonicalStarInstance& inst,
                               const RawStarInstance& raw, BackwardAlgo algo,
                               OrderKind kind, std::size_t num_orders,
                               std::uint64_t seed);

}  // namespace periodic

#endif  // PERIODIC_PALL_H_
