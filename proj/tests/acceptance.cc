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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "periodic/experiments.h"
#include "periodic/instances.h"
#include "periodic/model.h"
#include "periodic/oracle.h"
#include "periodic/pall.h"
#include "periodic/pazl.h"
#include "periodic/rng.h"
#include "periodic/scheduling.h"
#include "periodic/statmux.h"

using namespace periodic;

namespace {

constexpr Slot kTau = 2500;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (!o.pass) ++failures;
  std::printf("%s %s %s: %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", title,
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100 * x);
  return buf;
}

GenSpec headline_spec(std::uint64_t seed, WeightModel weights) {
  GenSpec spec;
  spec.n = 8;
  spec.tau = kTau;
  spec.load = {95, 100};
  spec.weights = weights;
  spec.seed = seed;
  return spec;
}

Outcome a1() {
  const Figure1 fig = figure1_network();
  const bool fixture_ok =
      validate_pra(fig.network, fig.offsets, fig.period, fig.tau).empty();
  std::size_t valid = 0;
  bool zero_found = false;
  for (Slot x = 0; x < 2; ++x) {
    for (Slot y = 0; y < 2; ++y) {
      for (Slot z = 0; z < 2; ++z) {
        const std::vector<Slot> m = {x, y, z};
        if (validate_pra(fig.network, m, 2, 1).empty()) {
          ++valid;
          zero_found = zero_found || (x == 0 && y == 0 && z == 0);
        }
      }
    }
  }
  return {fixture_ok && zero_found,
          "(0,0,0) accepted: " + std::string(fixture_ok ? "yes" : "no") + ", " +
              std::to_string(valid) + "/8 offset vectors valid, (0,0,0) among them: " +
              (zero_found ? "yes" : "no")};
}

Outcome a2() {
  std::size_t ok = 0;
  const std::size_t count = 200;
  for (std::size_t k = 0; k < count; ++k) {
    GenSpec spec;
    spec.n = 1 + k % 14;
    spec.tau = kTau;
    spec.load = {1, 3};
    spec.seed = instance_seed(2000, k);
    const auto raw = generate(spec);
    const auto inst = canonicalize(raw);
    const auto r = greedy_macroslot(inst);
    if (r.found() && verified(raw, zero_wait_view(inst), *r.assignment)) ++ok;
  }
  return {ok == count, std::to_string(ok) + "/" + std::to_string(count) +
                           " instances at load 1/3 solved"};
}

Outcome a3() {
  SplitMix64 rng(3000);
  std::size_t ok = 0, bound_held = 0;
  const std::size_t count = 200;
  for (std::size_t k = 0; k < count; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 14));
    RawStarInstance raw;
    raw.tau = kTau;
    const Slot work = static_cast<Slot>(n) * kTau;
    raw.period = work + rng.uniform(0, 2 * work);
    const Slot spread = raw.period - work;  // allowed R_max - R_min
    // Round trips 2b in [low, low + spread] without folding.
    const Slot low = rng.uniform(0, std::max<Slot>(0, raw.period - 1 - spread));
    for (std::size_t i = 0; i < n; ++i) {
      raw.source_weights.push_back(rng.uniform(0, 5000));
      raw.tail_weights.push_back((low + rng.uniform(0, spread)) / 2);
    }
    raw = with_margin(std::move(raw), 0);
    const auto inst = canonicalize(raw);
    const auto [rmin, rmax] =
        std::minmax_element(inst.round_trip.begin(), inst.round_trip.end());
    if (work + (*rmax - *rmin) <= inst.period) ++bound_held;
    const auto r = shortest_longest(inst);
    if (r.found() && verified(raw, zero_wait_view(inst), *r.assignment)) ++ok;
  }
  return {ok == count && bound_held == count,
          std::to_string(ok) + "/" + std::to_string(count) + " solved, bound held on " +
              std::to_string(bound_held)};
}

Outcome a4() {
  SplitMix64 rng(4000);
  const Oracle oracle;
  std::size_t disagreements = 0, sat = 0;
  const std::size_t count = 300;
  for (std::size_t k = 0; k < count; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const Slot tau = rng.uniform(1, 3);
    const Slot period =
        rng.uniform(std::max<Slot>(tau, static_cast<Slot>(n) * tau - 2), 30);
    std::vector<Slot> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(rng.uniform(0, period - 1));
    const auto inst = CanonicalStarInstance::make(period, tau, r, r);
    const auto truth = oracle.brute_pazl(inst);
    const auto got = compact_search(inst);
    const bool sound = !got.found() || is_valid(inst, *got.assignment);
    if (got.outcome == PazlResult::Outcome::kFailure || got.found() != truth.sat ||
        !sound) {
      ++disagreements;
    }
    sat += truth.sat;
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements on " +
                                  std::to_string(count) + " instances (" +
                                  std::to_string(sat) + " SAT)"};
}

Outcome a5() {
  SplitMix64 rng(5000);
  const Oracle oracle;
  std::size_t disagreements = 0, sat = 0;
  const std::size_t count = 300;
  const Slot horizon = 24;
  for (std::size_t k = 0; k < count; ++k) {
    const Slot tau = rng.uniform(1, 4);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    JobSet jobs;
    for (std::size_t i = 0; i < n; ++i) {
      const Slot release = rng.uniform(0, horizon - tau);
      jobs.push_back({release, rng.uniform(release + tau - 1, horizon)});
    }
    const auto truth = oracle.brute_schedule(jobs, tau);
    const auto got = mls_schedule(jobs, tau);
    bool agree = got.has_value() == truth.sat;
    if (agree && got) {
      agree = is_feasible(jobs, tau, *got) &&
              got->makespan == truth.witness->makespan;
    }
    disagreements += !agree;
    sat += truth.sat;
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements on " +
                                  std::to_string(count) + " job sets (" +
                                  std::to_string(sat) + " feasible)"};
}

Outcome a6() {
  SplitMix64 rng(6000);
  const Oracle oracle;
  std::size_t disagreements = 0, sat = 0;
  const std::size_t count = 200;
  for (std::size_t k = 0; k < count; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const Slot tau = rng.uniform(1, 3);
    const Slot period = rng.uniform(static_cast<Slot>(n) * tau, 20);
    std::vector<Slot> r, d;
    for (std::size_t i = 0; i < n; ++i) {
      r.push_back(rng.uniform(0, period - 1));
      d.push_back(r.back() + rng.uniform(-1, 2 * period));
    }
    const auto inst = CanonicalStarInstance::make(period, tau, r, d);
    const auto truth = oracle.brute_pall(inst);
    const auto got = fpt_pall(inst);
    const bool sound = !got.found() || is_valid(inst, *got.assignment);
    if (got.outcome == PallResult::Outcome::kFailure || got.found() != truth.sat ||
        !sound) {
      ++disagreements;
    }
    sat += truth.sat;
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements on " +
                                  std::to_string(count) + " instances (" +
                                  std::to_string(sat) + " SAT)"};
}

// Shared by A7, A8, A9 and A11: uniform weights on both sides, 95% load.
struct HeadlineRun {
  std::size_t count = 500;
  std::vector<std::optional<std::size_t>> gd, pmls, fpt;
  std::vector<Slot> statmux_margin;
};

const HeadlineRun& headline() {
  static const HeadlineRun run = [] {
    HeadlineRun h;
    h.gd.resize(h.count);
    h.pmls.resize(h.count);
    h.fpt.resize(h.count);
    h.statmux_margin.resize(h.count);
    const auto weights = WeightModel::uniform(0, 20000);
    parallel_for(h.count, 0, [&](std::size_t k) {
      const std::uint64_t seed = instance_seed(7000, k);
      const auto raw = generate(headline_spec(seed, weights));
      const std::uint64_t orders = order_seed(seed);
      h.gd[k] = first_success(raw, {BackwardAlgo::kGD, OrderKind::kRO, 1000, orders});
      h.pmls[k] =
          first_success(raw, {BackwardAlgo::kPMLS, OrderKind::kRO, 1000, orders});
      h.fpt[k] =
          first_success(raw, {BackwardAlgo::kFPTPMLS, OrderKind::kRO, 1, orders});
      h.statmux_margin[k] =
          simulate_statmux(raw, random_offsets(raw, orders), 1000).margin;
    });
    return h;
  }();
  return run;
}

double rate_within(const std::vector<std::optional<std::size_t>>& first,
                   std::size_t orders) {
  std::size_t hits = 0;
  for (const auto& f : first) hits += f && *f < orders;
  return static_cast<double>(hits) / first.size();
}

Outcome a7() {
  const double r = rate_within(headline().pmls, 1000);
  return {r >= 0.99, "PMLS success with 1000 orders " + pct(r) + " (need >= 99%)"};
}

Outcome a8() {
  const double r = rate_within(headline().gd, 1000);
  return {std::abs(r - 0.774) <= 0.05,
          "GD success with 1000 orders " + pct(r) + " (need 77.4% +- 5)"};
}

Outcome a9() {
  const double p = rate_within(headline().pmls, 1);
  const double f = rate_within(headline().fpt, 1);
  const bool ok = p >= 0.75 && std::abs(p - 0.8204) <= 0.07 && f >= 0.85 &&
                  std::abs(f - 0.9133) <= 0.07;
  return {ok, "one order: PMLS " + pct(p) + " (need >= 75%, 82.04% +- 7), FPT-PMLS " +
                  pct(f) + " (need >= 85%, 91.33% +- 7)"};
}

Outcome a10() {
  const std::size_t count = 500;
  const auto grid = margin_grid(2000, 100);
  std::vector<std::vector<bool>> solved(count);
  const auto weights = WeightModel::band(PeriodExpr::parse("P"), 800);
  parallel_for(count, 0, [&](std::size_t k) {
    const std::uint64_t seed = instance_seed(10000, k);
    const auto raw = generate(headline_spec(seed, weights));
    solved[k] = solved_at_margins(
        raw, {BackwardAlgo::kPMLS, OrderKind::kRO, 1000, order_seed(seed)}, grid);
  });
  auto rate_at = [&](std::size_t j) {
    std::size_t hits = 0;
    for (const auto& s : solved) hits += s[j];
    return static_cast<double>(hits) / count;
  };
  const double at0 = rate_at(0);
  const double at2000 = rate_at(grid.size() - 1);
  return {std::abs(at0 - 0.78) <= 0.06 && at2000 >= 0.99,
          "band(P,800) PMLS margin 0: " + pct(at0) + " (need 78% +- 6), margin 2000: " +
              pct(at2000) + " (need >= 99%)"};
}

Outcome a11() {
  const auto& h = headline();
  std::size_t heavy = 0;
  for (Slot m : h.statmux_margin) heavy += m >= 8000;
  const double tail = static_cast<double>(heavy) / h.count;
  const double pmls = rate_within(h.pmls, 1000);
  return {tail >= 0.10 && pmls >= 0.99,
          "stat-mux margin >= 8000 on " + pct(tail) + " (need >= 10%), PMLS margin 0 " +
              pct(pmls) + " (need >= 99%)"};
}

Outcome a12() {
  SplitMix64 rng(12000);
  const std::size_t count = 200;
  std::size_t ok = 0;
  for (std::size_t k = 0; k < count; ++k) {
    GenSpec spec;
    spec.n = static_cast<std::size_t>(rng.uniform(1, 24));
    spec.tau = rng.uniform(1, 5000);
    spec.load = {rng.uniform(1, 100), 100};
    spec.margin = rng.uniform(0, 10000);
    spec.tail_only = true;
    spec.seed = rng.next();
    const auto raw = generate(spec);
    const auto inst = canonicalize(raw);
    const auto r = align_longest(inst);
    if (!r.found() || !verified(raw, inst, *r.assignment)) continue;
    const auto pt = raw_process_times(raw, to_raw(inst, *r.assignment));
    if (std::all_of(pt.begin(), pt.end(), [&](Slot p) { return p == pt.front(); })) ++ok;
  }
  return {ok == count, std::to_string(ok) + "/" + std::to_string(count) +
                           " solved with equal process times"};
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
    den += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
  }
  return num / den;
}

// Mean PMLS time per call on fixed inputs: fastest of several passes.
double pmls_ms(std::size_t n) {
  const std::size_t count = 100;
  std::vector<CanonicalStarInstance> insts;
  std::vector<std::vector<Slot>> offsets;
  for (std::size_t k = 0; k < count; ++k) {
    GenSpec spec = headline_spec(instance_seed(13000, k), WeightModel::uniform(0, 20000));
    spec.n = n;
    const auto raw = generate(spec);
    insts.push_back(canonicalize(raw));
    offsets.push_back(forward_offsets(raw, {OrderKind::kRO, order_seed(spec.seed)}));
  }
  double best = 1e300;
  std::size_t sink = 0;
  for (int pass = 0; pass < 9; ++pass) {
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < count; ++k) sink += pmls(insts[k], offsets[k]).ok();
    best = std::min(best, std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                                  .count() /
                              count);
  }
  return sink == std::size_t(-1) ? 0 : best;
}

Outcome a13() {
  const std::vector<double> compact_sizes = {8, 10, 12, 14};
  std::vector<double> nodes;
  for (double n : compact_sizes) {
    nodes.push_back(compact_search_cost(static_cast<std::size_t>(n), 6, 13000).mean_nodes);
  }
  std::vector<double> exponents;
  bool increasing = true;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    exponents.push_back(std::log(nodes[i] / nodes[i - 1]) /
                        std::log(compact_sizes[i] / compact_sizes[i - 1]));
    if (i > 1 && exponents[i - 1] <= exponents[i - 2]) increasing = false;
  }

  const std::vector<double> pmls_sizes = {8, 12, 16, 20, 24};
  std::vector<double> slopes;
  for (int run = 0; run < 3; ++run) {
    std::vector<double> ms;
    for (double n : pmls_sizes) ms.push_back(pmls_ms(static_cast<std::size_t>(n)));
    slopes.push_back(loglog_slope(pmls_sizes, ms));
  }
  std::sort(slopes.begin(), slopes.end());
  const double slope = slopes[1];

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "compact nodes %.0f/%.0f/%.0f/%.0f at n=8/10/12/14, local exponents "
                "%.1f/%.1f/%.1f (need increasing); PMLS time exponent %.2f over "
                "n=8..24 (need < 1.5)",
                nodes[0], nodes[1], nodes[2], nodes[3], exponents[0], exponents[1],
                exponents[2], slope);
  return {increasing && slope < 1.5, buf};
}

}  // namespace

int main() {
  report("A1", "Figure 1 fixture", a1);
  report("A2", "greedy guarantee at load 1/3", a2);
  report("A3", "shortest-longest guarantee", a3);
  report("A4", "zero-wait oracle equivalence", a4);
  report("A5", "scheduling oracle equivalence", a5);
  report("A6", "two-stage exact oracle equivalence", a6);
  report("A7", "PMLS headline", a7);
  report("A8", "GD headline", a8);
  report("A9", "single-order column", a9);
  report("A10", "hard topology", a10);
  report("A11", "statistical multiplexing contrast", a11);
  report("A12", "align-longest property", a12);
  report("A13", "runtime trends", a13);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
