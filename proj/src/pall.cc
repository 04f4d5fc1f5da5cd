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

#include "periodic/pall.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "periodic/difference_constraints.h"
#include "periodic/scheduling.h"

namespace periodic {

std::optional<OrderKind> parse_order_kind(const std::string& text) {
  if (text == "lsr") return OrderKind::kLSR;
  if (text == "slr") return OrderKind::kSLR;
  if (text == "lsa") return OrderKind::kLSA;
  if (text == "sla") return OrderKind::kSLA;
  if (text == "ro") return OrderKind::kRO;
  if (text == "rors") return OrderKind::kRORS;
  if (text == "robs") return OrderKind::kROBS;
  return std::nullopt;
}

std::string to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::kLSR: return "lsr";
    case OrderKind::kSLR: return "slr";
    case OrderKind::kLSA: return "lsa";
    case OrderKind::kSLA: return "sla";
    case OrderKind::kRO: return "ro";
    case OrderKind::kRORS: return "rors";
    case OrderKind::kROBS: return "robs";
  }
  return "?";
}

bool is_random(OrderKind kind) {
  return kind == OrderKind::kRO || kind == OrderKind::kRORS ||
         kind == OrderKind::kROBS;
}

std::vector<std::size_t> sending_order(const RawStarInstance& raw,
                                       OrderKind kind, SplitMix64& rng) {
  const std::size_t n = raw.size();
  if (is_random(kind)) return rng.permutation(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t i) {
    return (kind == OrderKind::kLSR || kind == OrderKind::kSLR)
               ? raw.route_length(i)
               : raw.tail_weights[i];
  };
  const bool decreasing = kind == OrderKind::kLSR || kind == OrderKind::kLSA;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return decreasing ? key(a) > key(b) : key(a) < key(b);
  });
  return order;
}

std::vector<Slot> offsets_from_order(std::span<const std::size_t> order,
                                     OrderKind kind, Slot period, Slot tau,
                                     SplitMix64& rng) {
  const std::size_t n = order.size();
  const Slot free_slots = period - static_cast<Slot>(n) * tau;
  if (free_slots < 0) {
    throw std::invalid_argument("load above 1: n * tau > P");
  }
  std::vector<Slot> gaps(n, 0);
  if (kind == OrderKind::kRORS) {
    gaps = rng.weak_composition(free_slots, n);
  } else if (kind == OrderKind::kROBS) {
    const Slot each = free_slots / static_cast<Slot>(n);
    const auto extra = static_cast<std::size_t>(free_slots % static_cast<Slot>(n));
    for (std::size_t k = 0; k < n; ++k) gaps[k] = each + (k < extra ? 1 : 0);
  }
  std::vector<Slot> offsets(n, 0);
  Slot at = 0;
  for (std::size_t k = 0; k < n; ++k) {
    offsets[order[k]] = at;
    at += tau + gaps[k];
  }
  return offsets;
}

OrderStream::OrderStream(const RawStarInstance& raw, OrderKind kind,
                         std::uint64_t seed)
    : raw_(raw),
      kind_(kind),
      order_rng_(seed),
      gap_rng_(seed ^ 0x6a09e667f3bcc909ULL) {
  raw.check();
}

std::vector<Slot> OrderStream::next() {
  const auto order = sending_order(raw_, kind_, order_rng_);
  return offsets_from_order(order, kind_, raw_.period, raw_.tau, gap_rng_);
}

std::vector<Slot> forward_offsets(const RawStarInstance& raw,
                                  OrderPolicy policy) {
  return OrderStream(raw, policy.kind, policy.seed).next();
}

std::optional<BackwardAlgo> parse_backward_algo(const std::string& text) {
  if (text == "gd") return BackwardAlgo::kGD;
  if (text == "mls") return BackwardAlgo::kMLS;
  if (text == "pmls") return BackwardAlgo::kPMLS;
  if (text == "fpt-pmls") return BackwardAlgo::kFPTPMLS;
  return std::nullopt;
}

std::string to_string(BackwardAlgo algo) {
  switch (algo) {
    case BackwardAlgo::kGD: return "gd";
    case BackwardAlgo::kMLS: return "mls";
    case BackwardAlgo::kPMLS: return "pmls";
    case BackwardAlgo::kFPTPMLS: return "fpt-pmls";
  }
  return "?";
}

std::string to_string(StageFailure failure) {
  switch (failure) {
    case StageFailure::kNone: return "ok";
    case StageFailure::kNoFreeInterval: return "no free interval";
    case StageFailure::kDeadlineExceeded: return "deadline exceeded";
    case StageFailure::kInfeasible: return "infeasible";
    case StageFailure::kCollision: return "collision";
  }
  return "?";
}

namespace {

void check_offsets(const CanonicalStarInstance& inst,
                   std::span<const Slot> offsets) {
  if (offsets.size() != inst.size()) {
    throw std::invalid_argument("need one forward offset per route");
  }
}

WaitResult failed(StageFailure why, std::size_t route = 0) {
  WaitResult r;
  r.failure = why;
  r.route = route;
  return r;
}

// Accepts `waits` only if the full assignment validates.
WaitResult checked(const CanonicalStarInstance& inst,
                   std::span<const Slot> offsets, std::vector<Slot> waits) {
  Assignment asg{std::vector<Slot>(offsets.begin(), offsets.end()), waits};
  if (!is_valid(inst, asg)) {
    const auto violations = validate_pall(inst, asg);
    return failed(violations.front().kind == ViolationKind::kDeadline
                      ? StageFailure::kDeadlineExceeded
                      : StageFailure::kCollision,
                  violations.front().first);
  }
  WaitResult r;
  r.waits = std::move(waits);
  return r;
}

// Earliest s >= t such that [s, s+tau) avoids every occupied interval modulo
// the period.
std::optional<Slot> next_free(Slot t, std::span<const Slot> occupied,
                              Slot period, Slot tau) {
  Slot s = t;
  while (s - t < period) {
    bool moved = false;
    for (const Slot o : occupied) {
      if (!cyclic_overlap(s, o, period, tau)) continue;
      const Slot delta = mod_floor(s - o, period);
      s += delta < tau ? tau - delta : (period - delta) + tau;
      moved = true;
      break;
    }
    if (!moved) return s;
  }
  return std::nullopt;
}

}  // namespace

WaitResult greedy_deadline(const CanonicalStarInstance& inst,
                           std::span<const Slot> offsets) {
  check_offsets(inst, offsets);
  const std::size_t n = inst.size();
  std::vector<Slot> eligible(n), due(n);
  for (std::size_t i = 0; i < n; ++i) {
    eligible[i] = offsets[i] + inst.round_trip[i];
    due[i] = offsets[i] + inst.deadline[i];  // latest crossing start
  }
  std::vector<std::size_t> by_release(n);
  std::iota(by_release.begin(), by_release.end(), std::size_t{0});
  std::stable_sort(by_release.begin(), by_release.end(),
                   [&](std::size_t a, std::size_t b) {
                     return eligible[a] < eligible[b];
                   });
  auto later = [&](std::size_t a, std::size_t b) {
    return due[a] != due[b] ? due[a] > due[b] : a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)>
      ready(later);

  std::vector<Slot> waits(n, 0);
  std::vector<Slot> occupied;
  std::size_t next = 0;
  Slot t = 0;
  auto admit = [&](Slot until) {
    while (next < n && eligible[by_release[next]] <= until) {
      ready.push(by_release[next++]);
    }
  };
  for (std::size_t placed = 0; placed < n; ++placed) {
    if (ready.empty()) {
      t = std::max(t, eligible[by_release[next]]);
      admit(t);
    }
    const auto s = next_free(t, occupied, inst.period, inst.tau);
    if (!s) return failed(StageFailure::kNoFreeInterval, ready.top());
    admit(*s);
    const std::size_t r = ready.top();
    ready.pop();
    if (*s > due[r]) return failed(StageFailure::kDeadlineExceeded, r);
    waits[r] = *s - eligible[r];
    occupied.push_back(mod_floor(*s, inst.period));
    t = *s + inst.tau;
  }
  return checked(inst, offsets, std::move(waits));
}

WaitResult mls_backward(const CanonicalStarInstance& inst,
                        std::span<const Slot> offsets) {
  check_offsets(inst, offsets);
  const std::size_t n = inst.size();
  JobSet jobs(n);
  for (std::size_t i = 0; i < n; ++i) {
    jobs[i].release = offsets[i] + inst.round_trip[i];
    jobs[i].deadline = offsets[i] + inst.deadline[i] + inst.tau;
  }
  const auto schedule = mls_schedule(jobs, inst.tau);
  if (!schedule) return failed(StageFailure::kInfeasible);
  std::vector<Slot> waits(n);
  for (std::size_t i = 0; i < n; ++i) {
    waits[i] = schedule->starts[i] - jobs[i].release;
  }
  return checked(inst, offsets, std::move(waits));
}

namespace {

// Time frame where the anchor's release is 0 and every release is folded into
// [0, P). Frame time = absolute time - shift[i].
struct AnchorFrame {
  std::vector<Slot> release;
  std::vector<Slot> due;  // latest crossing start
  std::vector<Slot> shift;
};

AnchorFrame anchor_frame(const CanonicalStarInstance& inst,
                         std::span<const Slot> offsets, std::size_t anchor) {
  const std::size_t n = inst.size();
  const Slot P = inst.period;
  const Slot base = offsets[anchor] + inst.round_trip[anchor];
  AnchorFrame f{std::vector<Slot>(n), std::vector<Slot>(n),
                std::vector<Slot>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Slot eligible = offsets[i] + inst.round_trip[i];
    const Slot rebased = eligible - base;
    const Slot folded = mod_floor(rebased, P);
    f.shift[i] = base + (rebased - folded);
    f.release[i] = folded;
    f.due[i] = offsets[i] + inst.deadline[i] - f.shift[i];
  }
  return f;
}

// Moves route i one period later in the frame: its release is clipped at 0.
void push_to_next_window(AnchorFrame& f, std::size_t i, Slot period) {
  f.release[i] = std::max<Slot>(0, f.release[i] - period);
  f.due[i] -= period;
  f.shift[i] += period;
}

// Runs MLS on the frame with start deadlines capped at P - tau and turns a
// schedule into waiting times.
std::optional<std::vector<Slot>> schedule_window(
    const CanonicalStarInstance& inst, std::span<const Slot> offsets,
    const AnchorFrame& f) {
  const std::size_t n = inst.size();
  const Slot window_end = inst.period - inst.tau;
  JobSet jobs(n);
  for (std::size_t i = 0; i < n; ++i) {
    jobs[i].release = f.release[i];
    jobs[i].deadline = std::min(f.due[i], window_end) + inst.tau;
  }
  const auto schedule = mls_schedule(jobs, inst.tau);
  if (!schedule) return std::nullopt;
  std::vector<Slot> waits(n);
  for (std::size_t i = 0; i < n; ++i) {
    waits[i] = schedule->starts[i] + f.shift[i] -
               (offsets[i] + inst.round_trip[i]);
  }
  return waits;
}

}  // namespace

WaitResult pmls(const CanonicalStarInstance& inst,
                std::span<const Slot> offsets) {
  check_offsets(inst, offsets);
  const std::size_t n = inst.size();
  const Slot P = inst.period;
  for (std::size_t anchor = 0; anchor < n; ++anchor) {
    AnchorFrame f = anchor_frame(inst, offsets, anchor);
    for (std::size_t i = 0; i < n; ++i) {
      if (f.release[i] > P - inst.tau) push_to_next_window(f, i, P);
    }
    if (auto waits = schedule_window(inst, offsets, f)) {
      return checked(inst, offsets, std::move(*waits));
    }
  }
  return failed(StageFailure::kInfeasible);
}

WaitResult fpt_pmls(const CanonicalStarInstance& inst,
                    std::span<const Slot> offsets) {
  check_offsets(inst, offsets);
  const std::size_t n = inst.size();
  const Slot P = inst.period;
  const Slot tau = inst.tau;
  for (std::size_t anchor = 0; anchor < n; ++anchor) {
    const AnchorFrame base = anchor_frame(inst, offsets, anchor);
    AnchorFrame forced = base;
    std::vector<std::size_t> optional;
    for (std::size_t i = 0; i < n; ++i) {
      if (base.release[i] > P - tau) {
        push_to_next_window(forced, i, P);
      } else if (i != anchor && base.due[i] >= P + tau) {
        // Room to cross after the anchor's next message.
        optional.push_back(i);
      }
    }
    if (optional.size() >= 63) {
      throw std::invalid_argument("fpt_pmls: too many optional routes");
    }
    const std::uint64_t subsets = std::uint64_t{1} << optional.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      AnchorFrame f = forced;
      for (std::size_t k = 0; k < optional.size(); ++k) {
        if (mask >> k & 1) push_to_next_window(f, optional[k], P);
      }
      if (auto waits = schedule_window(inst, offsets, f)) {
        return checked(inst, offsets, std::move(*waits));
      }
    }
  }
  return failed(StageFailure::kInfeasible);
}

WaitResult solve_backward(BackwardAlgo algo, const CanonicalStarInstance& inst,
                          std::span<const Slot> offsets) {
  switch (algo) {
    case BackwardAlgo::kGD: return greedy_deadline(inst, offsets);
    case BackwardAlgo::kMLS: return mls_backward(inst, offsets);
    case BackwardAlgo::kPMLS: return pmls(inst, offsets);
    case BackwardAlgo::kFPTPMLS: return fpt_pmls(inst, offsets);
  }
  throw std::invalid_argument("unknown backward algorithm");
}

PallResult fpt_pall(const CanonicalStarInstance& inst, std::size_t max_n) {
  inst.check();
  const std::size_t n = inst.size();
  if (n > max_n) {
    throw std::invalid_argument("fpt_pall: n = " + std::to_string(n) +
                                " exceeds the guard " + std::to_string(max_n));
  }
  const Slot P = inst.period;
  const Slot tau = inst.tau;
  PallResult result;
  if (static_cast<Slot>(n) * tau > P) {
    result.outcome = PallResult::Outcome::kUnsat;
    result.reason = "load above 1";
    return result;
  }

  // Variables: 0 = time origin, 1..n = forward crossings x_i, n+1..2n =
  // backward crossing residues u_i in [0, P). The true crossing is
  // y_i = u_i + wraps_i * P.
  const std::size_t origin = 0;
  auto x = [](std::size_t i) { return 1 + i; };
  auto u = [n](std::size_t i) { return 1 + n + i; };

  std::vector<std::size_t> forward(n);
  std::iota(forward.begin(), forward.end(), std::size_t{0});
  std::vector<int> wraps(n, 0);
  DifferenceSystem system(2 * n + 1);

  do {  // forward orders with route 0 first
    do {  // wrap multiplicities, counted in base 3
      std::vector<std::size_t> backward(n);
      std::iota(backward.begin(), backward.end(), std::size_t{0});
      do {
        ++result.systems;
        system.clear();
        system.fix(x(forward[0]), origin, 0);
        for (std::size_t k = 0; k + 1 < n; ++k) {
          system.add(x(forward[k]), x(forward[k + 1]), -tau);
          system.add(u(backward[k]), u(backward[k + 1]), -tau);
        }
        system.add(x(forward[n - 1]), origin, P - tau);
        system.add(u(backward[n - 1]), u(backward[0]), P - tau);
        for (std::size_t i = 0; i < n; ++i) {
          const Slot wrap = wraps[i] * P;
          system.add(origin, u(i), 0);
          system.add(u(i), origin, P - 1);
          // y_i >= x_i + R_i
          system.add(x(i), u(i), wrap - inst.round_trip[i]);
          // y_i <= x_i + deadline_i, and w_i < P without loss of generality
          system.add(u(i), x(i),
                     std::min(inst.deadline[i], inst.round_trip[i] + P - 1) -
                         wrap);
        }
        if (const auto sol = system.solve(origin)) {
          Assignment asg{std::vector<Slot>(n), std::vector<Slot>(n)};
          for (std::size_t i = 0; i < n; ++i) {
            asg.offsets[i] = (*sol)[x(i)];
            asg.waits[i] = (*sol)[u(i)] + wraps[i] * P - (*sol)[x(i)] -
                           inst.round_trip[i];
          }
          if (is_valid(inst, asg)) {
            result.outcome = PallResult::Outcome::kFound;
            result.assignment = std::move(asg);
            return result;
          }
        }
      } while (std::next_permutation(backward.begin(), backward.end()));
      std::size_t k = 0;
      while (k < n && wraps[k] == 2) wraps[k++] = 0;
      if (k == n) break;
      ++wraps[k];
    } while (true);
  } while (std::next_permutation(forward.begin() + 1, forward.end()));

  result.outcome = PallResult::Outcome::kUnsat;
  result.reason = "every difference-constraint system is infeasible";
  return result;
}

PallResult align_longest(const CanonicalStarInstance& inst) {
  inst.check();
  const std::size_t n = inst.size();
  PallResult result;
  if (static_cast<Slot>(n) * inst.tau > inst.period) {
    result.reason = "period shorter than n * tau";
    return result;
  }
  Slot longest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    longest = std::max(longest, inst.unfolded_round_trip(i));
  }
  Assignment asg{std::vector<Slot>(n), std::vector<Slot>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    asg.offsets[i] = static_cast<Slot>(i) * inst.tau;
    asg.waits[i] = longest - inst.unfolded_round_trip(i);
  }
  const auto violations = validate_pall(inst, asg);
  if (!violations.empty()) {
    result.reason = violations.front().detail;
    return result;
  }
  result.outcome = PallResult::Outcome::kFound;
  result.assignment = std::move(asg);
  return result;
}

OrdersResult solve_with_orders(const CanonicalStarInstance& inst,
                               const RawStarInstance& raw, BackwardAlgo algo,
                               OrderKind kind, std::size_t num_orders,
                               std::uint64_t seed) {
  OrdersResult result;
  OrderStream stream(raw, kind, seed);
  const std::size_t draws =
      is_random(kind) ? num_orders : std::min<std::size_t>(num_orders, 1);
  for (std::size_t o = 0; o < draws; ++o) {
    const auto offsets = stream.next();
    ++result.orders_tried;
    WaitResult stage2 = solve_backward(algo, inst, offsets);
    if (!stage2.ok()) continue;
    Assignment asg{offsets, std::move(stage2.waits)};
    if (!is_valid(inst, asg)) continue;
    result.assignment = std::move(asg);
    result.success_order = o;
    return result;
  }
  return result;
}

OrdersResult solve_with_orders(const RawStarInstance& raw, BackwardAlgo algo,
                               OrderKind kind, std::size_t num_orders,
                               std::uint64_t seed) {
  return solve_with_orders(canonicalize(raw), raw, algo, kind, num_orders,
                           seed);
}

}  // namespace periodic
