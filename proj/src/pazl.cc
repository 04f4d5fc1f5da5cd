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

#include "periodic/pazl.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace periodic {

CanonicalStarInstance zero_wait_view(const CanonicalStarInstance& inst) {
  CanonicalStarInstance view = inst;
  view.deadline = inst.round_trip;
  return view;
}

namespace {

PazlResult finish(const CanonicalStarInstance& inst, Assignment asg,
                  PazlStats stats) {
  PazlResult result;
  result.stats = stats;
  const auto violations = validate_pall(zero_wait_view(inst), asg);
  if (violations.empty()) {
    result.outcome = PazlResult::Outcome::kFound;
    result.assignment = std::move(asg);
  } else {
    result.outcome = PazlResult::Outcome::kFailure;
    result.blocking = violations.front();
  }
  return result;
}

}  // namespace

PazlResult shortest_longest(const CanonicalStarInstance& inst) {
  inst.check();
  const std::size_t n = inst.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.round_trip[a] < inst.round_trip[b];
  });
  Assignment asg{std::vector<Slot>(n), std::vector<Slot>(n, 0)};
  for (std::size_t k = 0; k < n; ++k) {
    asg.offsets[order[k]] =
        mod_floor(static_cast<Slot>(k) * inst.tau, inst.period);
  }
  return finish(inst, std::move(asg), {1, n});
}

PazlResult greedy_macroslot(const CanonicalStarInstance& inst) {
  inst.check();
  const std::size_t n = inst.size();
  const Slot P = inst.period;
  const Slot tau = inst.tau;
  const auto macro_slots = static_cast<std::size_t>(P / tau);
  std::vector<bool> used(macro_slots, false);
  std::vector<Slot> backward;  // starts of placed answers
  std::vector<std::size_t> placed;
  Assignment asg{std::vector<Slot>(n, 0), std::vector<Slot>(n, 0)};
  PazlStats stats;

  for (std::size_t i = 0; i < n; ++i) {
    ++stats.nodes;
    bool done = false;
    std::optional<Violation> first_clash;
    for (std::size_t k = 0; k < macro_slots && !done; ++k) {
      if (used[k]) continue;
      ++stats.offsets_tried;
      const Slot offset = static_cast<Slot>(k) * tau;
      const Slot back = mod_floor(offset + inst.round_trip[i], P);
      std::optional<std::size_t> clash;
      for (std::size_t j = 0; j < backward.size() && !clash; ++j) {
        if (cyclic_overlap(back, backward[j], P, tau)) clash = placed[j];
      }
      if (clash) {
        if (!first_clash) {
          first_clash = Violation{ViolationKind::kBackwardCollision,
                                  std::min(*clash, i), std::max(*clash, i),
                                  "every free macro-slot collides backward"};
        }
        continue;
      }
      used[k] = true;
      asg.offsets[i] = offset;
      backward.push_back(back);
      placed.push_back(i);
      done = true;
    }
    if (!done) {
      PazlResult result;
      result.outcome = PazlResult::Outcome::kFailure;
      result.blocking = first_clash.value_or(
          Violation{ViolationKind::kForwardCollision, i, i,
                    "no free forward macro-slot"});
      result.stats = stats;
      return result;
    }
  }
  return finish(inst, std::move(asg), stats);
}

namespace {

class CompactSearch {
 public:
  CompactSearch(const CanonicalStarInstance& inst, CompactSearchOptions options)
      : inst_(inst),
        n_(inst.size()),
        options_(options),
        offsets_(n_, 0),
        assigned_(n_, false),
        phase_(n_, kOpen) {}

  PazlResult run() {
    PazlResult result;
    place(0, 0);
    const bool found = !cut() && search();
    result.stats = stats_;
    if (found) {
      result.outcome = PazlResult::Outcome::kFound;
      result.assignment = Assignment{offsets_, std::vector<Slot>(n_, 0)};
    } else {
      result.outcome = aborted_ ? PazlResult::Outcome::kFailure
                                : PazlResult::Outcome::kUnsat;
    }
    return result;
  }

 private:
  // Per assigned route: which adjacent placements it may still receive.
  enum Phase : unsigned char { kOpen, kBackwardOnly, kClosed };

  Slot back_start(std::size_t r, Slot offset) const {
    return mod_floor(offset + inst_.round_trip[r], inst_.period);
  }

  bool fits(std::size_t r, Slot offset) const {
    const Slot back = back_start(r, offset);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!assigned_[j]) continue;
      if (cyclic_overlap(offset, offsets_[j], inst_.period, inst_.tau) ||
          cyclic_overlap(back, back_start(j, offsets_[j]), inst_.period,
                         inst_.tau)) {
        return false;
      }
    }
    return true;
  }

  void place(std::size_t r, Slot offset) {
    offsets_[r] = offset;
    assigned_[r] = true;
    phase_[r] = kOpen;
    ++count_;
  }

  void unplace(std::size_t r) {
    assigned_[r] = false;
    --count_;
  }

  // Number of whole messages the free gaps of one direction can still hold.
  std::size_t capacity(bool backward) {
    starts_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      if (assigned_[j]) {
        starts_.push_back(backward ? back_start(j, offsets_[j]) : offsets_[j]);
      }
    }
    std::sort(starts_.begin(), starts_.end());
    std::size_t total = 0;
    for (std::size_t k = 0; k < starts_.size(); ++k) {
      const Slot next = k + 1 < starts_.size()
                            ? starts_[k + 1]
                            : starts_.front() + inst_.period;
      const Slot gap = next - starts_[k] - inst_.tau;
      if (gap > 0) total += static_cast<std::size_t>(gap / inst_.tau);
    }
    return total;
  }

  bool cut() {
    const std::size_t remaining = n_ - count_;
    return capacity(false) < remaining || capacity(true) < remaining;
  }

  bool budget_exhausted() {
    if (options_.max_nodes != 0 && stats_.nodes >= options_.max_nodes) {
      aborted_ = true;
    }
    return aborted_;
  }

  bool try_child(std::size_t r, Slot offset) {
    ++stats_.offsets_tried;
    if (!fits(r, offset)) return false;
    place(r, offset);
    const bool found = !cut() && search();
    if (!found) unplace(r);
    return found;
  }

  bool search() {
    if (budget_exhausted()) return false;
    ++stats_.nodes;
    if (count_ == n_) return true;
    std::size_t anchor = n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (assigned_[j] && phase_[j] != kClosed) {
        anchor = j;
        break;
      }
    }
    if (anchor == n_) return false;

    const Slot P = inst_.period;
    const Slot forward_next = mod_floor(offsets_[anchor] + inst_.tau, P);
    if (phase_[anchor] == kOpen) {
      phase_[anchor] = kBackwardOnly;
      for (std::size_t r = 0; r < n_; ++r) {
        if (assigned_[r]) continue;
        if (try_child(r, forward_next)) return true;
        if (aborted_) return false;
      }
      // No route follows the anchor in the forward period.
      if (search()) return true;
      phase_[anchor] = kOpen;
      return false;
    }

    phase_[anchor] = kClosed;
    const Slot backward_next =
        back_start(anchor, offsets_[anchor]) + inst_.tau;
    for (std::size_t r = 0; r < n_; ++r) {
      if (assigned_[r]) continue;
      const Slot offset = mod_floor(backward_next - inst_.round_trip[r], P);
      // Already explored as a forward child.
      if (offset == forward_next) continue;
      if (try_child(r, offset)) return true;
      if (aborted_) return false;
    }
    if (search()) return true;
    phase_[anchor] = kBackwardOnly;
    return false;
  }

  const CanonicalStarInstance& inst_;
  const std::size_t n_;
  const CompactSearchOptions options_;
  std::vector<Slot> offsets_;
  std::vector<bool> assigned_;
  std::vector<Phase> phase_;
  std::vector<Slot> starts_;
  std::size_t count_ = 0;
  PazlStats stats_;
  bool aborted_ = false;
};

}  // namespace

PazlResult compact_search(const CanonicalStarInstance& inst,
                          CompactSearchOptions options) {
  inst.check();
  PazlResult result = CompactSearch(inst, options).run();
  if (result.found()) {
    result = finish(inst, *result.assignment, result.stats);
  }
  return result;
}

}  // namespace periodic
