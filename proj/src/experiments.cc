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

#include "periodic/experiments.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "periodic/pazl.h"
#include "periodic/statmux.h"

namespace periodic {

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

CsvTable& CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("CSV row width does not match the header");
  }
  rows_.push_back(std::move(row));
  return *this;
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out << (k ? "," : "") << cells[k];
    }
    out << '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << str();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::string format_number(double value) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(6) << value;
  return out.str();
}

std::string format_number(std::int64_t value) { return std::to_string(value); }

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count && !stop; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t order_seed(std::uint64_t instance_seed) {
  return SplitMix64(instance_seed ^ 0xbb67ae8584caa73bULL).next();
}

bool verified(const RawStarInstance& raw, const CanonicalStarInstance& inst,
              const Assignment& asg) {
  return is_valid(inst, asg) && validate_raw(raw, to_raw(inst, asg)).empty();
}

std::vector<Slot> margin_grid(Slot last, Slot step) {
  std::vector<Slot> grid;
  for (Slot m = 0; m <= last; m += step) grid.push_back(m);
  return grid;
}

namespace {

bool monotone_in_margin(BackwardAlgo algo) {
  return algo != BackwardAlgo::kMLS;
}

bool solves(BackwardAlgo algo, const CanonicalStarInstance& inst,
            std::span<const Slot> offsets) {
  WaitResult r = solve_backward(algo, inst, offsets);
  if (!r.ok()) return false;
  return is_valid(inst, {std::vector<Slot>(offsets.begin(), offsets.end()),
                         std::move(r.waits)});
}

}  // namespace

std::vector<bool> solved_at_margins(const RawStarInstance& raw,
                                    const OrderSearch& search,
                                    std::span<const Slot> margins) {
  const std::size_t k = margins.size();
  std::vector<CanonicalStarInstance> at(k);
  for (std::size_t j = 0; j < k; ++j) {
    at[j] = canonicalize(with_margin(raw, margins[j]));
  }
  std::vector<bool> solved(k, false);
  if (k == 0) return solved;
  OrderStream stream(raw, search.kind, search.seed);
  const std::size_t orders =
      is_random(search.kind) ? search.orders : std::min<std::size_t>(search.orders, 1);

  if (monotone_in_margin(search.algo)) {
    std::size_t best = k;  // smallest solved index so far
    for (std::size_t o = 0; o < orders && best > 0; ++o) {
      const auto offsets = stream.next();
      while (best > 0 && solves(search.algo, at[best - 1], offsets)) --best;
    }
    for (std::size_t j = best; j < k; ++j) solved[j] = true;
    return solved;
  }

  std::size_t open = k;
  for (std::size_t o = 0; o < orders && open > 0; ++o) {
    const auto offsets = stream.next();
    for (std::size_t j = 0; j < k; ++j) {
      if (!solved[j] && solves(search.algo, at[j], offsets)) {
        solved[j] = true;
        --open;
      }
    }
  }
  return solved;
}

std::optional<Slot> minimal_margin(const RawStarInstance& raw,
                                   const OrderSearch& search,
                                   std::span<const Slot> margins) {
  const auto solved = solved_at_margins(raw, search, margins);
  for (std::size_t j = 0; j < margins.size(); ++j) {
    if (solved[j]) return margins[j];
  }
  return std::nullopt;
}

std::optional<std::size_t> first_success(const RawStarInstance& raw,
                                         const OrderSearch& search) {
  const auto inst = canonicalize(raw);
  const auto result = solve_with_orders(inst, raw, search.algo, search.kind,
                                        search.orders, search.seed);
  if (!result.assignment || !verified(raw, inst, *result.assignment)) {
    return std::nullopt;
  }
  return result.success_order;
}

namespace {

constexpr Slot kTau = 2500;

GenSpec spec_for(std::size_t n, Rational load, WeightModel weights,
                 std::uint64_t seed, bool tail_only = false) {
  GenSpec spec;
  spec.n = n;
  spec.tau = kTau;
  spec.load = load;
  spec.weights = weights;
  spec.margin = 0;
  spec.seed = seed;
  spec.tail_only = tail_only;
  return spec;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

SearchCost compact_search_cost(std::size_t n, std::size_t count,
                               std::uint64_t seed) {
  SearchCost cost;
  for (std::size_t k = 0; k < count; ++k) {
    const auto raw = generate(spec_for(n, {95, 100}, WeightModel::uniform(0, 20000),
                                       instance_seed(seed, k), true));
    const auto inst = canonicalize(raw);
    const auto start = std::chrono::steady_clock::now();
    const auto result = compact_search(inst);
    cost.mean_seconds += seconds_since(start);
    cost.mean_nodes += static_cast<double>(result.stats.nodes);
    if (result.found() && verified(raw, zero_wait_view(inst), *result.assignment)) {
      cost.found_rate += 1;
    }
  }
  if (count > 0) {
    cost.mean_nodes /= count;
    cost.mean_seconds /= count;
    cost.found_rate /= count;
  }
  return cost;
}

BackwardCost backward_cost(BackwardAlgo algo, std::size_t n, std::size_t count,
                           std::uint64_t seed) {
  BackwardCost cost;
  for (std::size_t k = 0; k < count; ++k) {
    const auto raw = generate(spec_for(n, {95, 100}, WeightModel::uniform(0, 20000),
                                       instance_seed(seed, k)));
    const auto inst = canonicalize(raw);
    const auto offsets =
        forward_offsets(raw, {OrderKind::kRO, order_seed(instance_seed(seed, k))});
    const auto start = std::chrono::steady_clock::now();
    WaitResult r = solve_backward(algo, inst, offsets);
    cost.mean_ms += 1000 * seconds_since(start);
    if (r.ok() && verified(raw, inst, {offsets, r.waits})) cost.success_rate += 1;
  }
  if (count > 0) {
    cost.mean_ms /= count;
    cost.success_rate /= count;
  }
  return cost;
}

namespace {

using Tables = std::vector<std::pair<std::string, CsvTable>>;

struct Context {
  const ExperimentOptions& options;
  std::size_t count(std::size_t desk, std::size_t paper) const {
    if (options.count) return options.count;
    return options.full ? paper : desk;
  }
  std::size_t orders(std::size_t fallback = 1000) const {
    return options.orders ? options.orders : fallback;
  }
  std::string seed() const { return std::to_string(options.seed); }
  std::uint64_t seed_of(std::size_t index) const {
    return instance_seed(options.seed, index);
  }
  void each(std::size_t count, const std::function<void(std::size_t)>& body) const {
    parallel_for(count, options.threads, body);
  }
};

std::string rate(std::size_t hits, std::size_t total) {
  return format_number(total ? static_cast<double>(hits) / total : 0.0);
}

std::string load_label(Rational load) { return format_number(load.value()); }

// Zero-wait solvers of the PAZL figures.
enum class PazlAlgo { kShortestLongest, kGreedy, kCompact };
constexpr std::array kPazlAlgos = {PazlAlgo::kShortestLongest,
                                   PazlAlgo::kGreedy, PazlAlgo::kCompact};

std::string to_string(PazlAlgo algo) {
  switch (algo) {
    case PazlAlgo::kShortestLongest: return "sl";
    case PazlAlgo::kGreedy: return "greedy";
    case PazlAlgo::kCompact: return "compact";
  }
  return "?";
}

bool pazl_solves(PazlAlgo algo, const RawStarInstance& raw) {
  const auto inst = canonicalize(raw);
  PazlResult r;
  switch (algo) {
    case PazlAlgo::kShortestLongest: r = shortest_longest(inst); break;
    case PazlAlgo::kGreedy: r = greedy_macroslot(inst); break;
    case PazlAlgo::kCompact: r = compact_search(inst); break;
  }
  return r.found() && verified(raw, zero_wait_view(inst), *r.assignment);
}

Tables fig_short(const Context& ctx) {
  const std::size_t count = ctx.count(100, 1000);
  CsvTable table({"n", "algorithm", "mean_max_load", "instances", "seed"});
  for (std::size_t n = 1; n <= 14; ++n) {
    std::vector<std::array<double, 3>> loads(count);
    ctx.each(count, [&](std::size_t k) {
      RawStarInstance raw =
          generate(spec_for(n, {1, 1}, WeightModel::uniform(0, 700),
                            ctx.seed_of(k), true));
      const Slot lo_period = static_cast<Slot>(n) * kTau;
      for (std::size_t a = 0; a < kPazlAlgos.size(); ++a) {
        auto ok = [&](Slot period) {
          raw.period = period;
          return pazl_solves(kPazlAlgos[a], raw);
        };
        Slot lo = lo_period, hi = 3 * lo_period;
        double best = 0;
        if (ok(lo)) {
          best = 1.0;
        } else if (ok(hi)) {
          while (hi - lo > 1) {
            const Slot mid = lo + (hi - lo) / 2;
            (ok(mid) ? hi : lo) = mid;
          }
          best = static_cast<double>(lo_period) / hi;
        }
        loads[k][a] = best;
      }
    });
    for (std::size_t a = 0; a < kPazlAlgos.size(); ++a) {
      double sum = 0;
      for (const auto& l : loads) sum += l[a];
      table.add({std::to_string(n), to_string(kPazlAlgos[a]),
                 format_number(count ? sum / count : 0.0),
                 std::to_string(count), ctx.seed()});
    }
  }
  return {{"fig-short.csv", table}};
}

Tables fig_long(const Context& ctx) {
  const std::size_t count = ctx.count(200, 1000);
  CsvTable table(
      {"load", "period", "algorithm", "success_rate", "instances", "seed"});
  for (std::int64_t pct = 100; pct >= 40; pct -= 5) {
    const Rational load{pct, 100};
    std::vector<std::array<bool, 3>> ok(count);
    ctx.each(count, [&](std::size_t k) {
      const auto raw = generate(spec_for(8, load, WeightModel::uniform(0, 20000),
                                         ctx.seed_of(k), true));
      for (std::size_t a = 0; a < kPazlAlgos.size(); ++a) {
        ok[k][a] = pazl_solves(kPazlAlgos[a], raw);
      }
    });
    const Slot period = period_for_load(8, kTau, load);
    for (std::size_t a = 0; a < kPazlAlgos.size(); ++a) {
      std::size_t hits = 0;
      for (const auto& o : ok) hits += o[a];
      table.add({load_label(load), std::to_string(period),
                 to_string(kPazlAlgos[a]), rate(hits, count),
                 std::to_string(count), ctx.seed()});
    }
  }
  return {{"fig-long.csv", table}};
}

const WeightModel kUniformWeights = WeightModel::uniform(0, 20000);

// Success per (series, margin) for series of order searches on the same
// instances.
CsvTable margin_curves(const Context& ctx, Rational load,
                       const std::vector<std::pair<std::string, OrderSearch>>& series,
                       const std::string& series_column) {
  const std::size_t count = ctx.count(300, 10000);
  const auto grid = margin_grid(3000, 100);
  std::vector<std::vector<std::vector<bool>>> solved(
      count, std::vector<std::vector<bool>>(series.size()));
  ctx.each(count, [&](std::size_t k) {
    const auto raw = generate(spec_for(8, load, kUniformWeights, ctx.seed_of(k)));
    for (std::size_t s = 0; s < series.size(); ++s) {
      OrderSearch search = series[s].second;
      search.seed = order_seed(ctx.seed_of(k));
      solved[k][s] = solved_at_margins(raw, search, grid);
    }
  });
  CsvTable table({"margin", series_column, "success_rate", "instances", "seed"});
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t s = 0; s < series.size(); ++s) {
      std::size_t hits = 0;
      for (const auto& row : solved) hits += row[s][j];
      table.add({std::to_string(grid[j]), series[s].first, rate(hits, count),
                 std::to_string(count), ctx.seed()});
    }
  }
  return table;
}

Tables fig_orders(const Context& ctx, Rational load, const std::string& file) {
  std::vector<std::pair<std::string, OrderSearch>> series;
  for (const OrderKind kind :
       {OrderKind::kLSR, OrderKind::kSLR, OrderKind::kLSA, OrderKind::kSLA,
        OrderKind::kRO, OrderKind::kRORS, OrderKind::kROBS}) {
    series.push_back({to_string(kind),
                      {BackwardAlgo::kGD, kind, ctx.orders(), 0}});
  }
  return {{file, margin_curves(ctx, load, series, "policy")}};
}

Tables fig_margin_95(const Context& ctx) {
  std::vector<std::pair<std::string, OrderSearch>> series;
  for (const BackwardAlgo algo : {BackwardAlgo::kGD, BackwardAlgo::kMLS,
                                  BackwardAlgo::kPMLS, BackwardAlgo::kFPTPMLS}) {
    series.push_back({to_string(algo), {algo, OrderKind::kRO, ctx.orders(), 0}});
  }
  return {{"fig-margin-95.csv",
           margin_curves(ctx, {95, 100}, series, "algorithm")}};
}

Tables table_orders(const Context& ctx) {
  const std::size_t count = ctx.count(300, 10000);
  std::vector<std::size_t> columns = {1, 10, 100, 1000};
  if (ctx.options.full) columns.insert(columns.end(), {10000, 100000});
  if (ctx.options.orders) {
    columns.clear();
    for (std::size_t c = 1; c <= ctx.options.orders; c *= 10) columns.push_back(c);
  }
  const std::size_t most = columns.back();
  const std::array algos = {BackwardAlgo::kGD, BackwardAlgo::kPMLS,
                            BackwardAlgo::kFPTPMLS};
  std::vector<std::array<std::optional<std::size_t>, 3>> first(count);
  ctx.each(count, [&](std::size_t k) {
    const auto raw =
        generate(spec_for(8, {95, 100}, kUniformWeights, ctx.seed_of(k)));
    for (std::size_t a = 0; a < algos.size(); ++a) {
      first[k][a] = first_success(
          raw, {algos[a], OrderKind::kRO, most, order_seed(ctx.seed_of(k))});
    }
  });
  CsvTable table({"algorithm", "orders", "success_rate", "instances", "seed"});
  for (std::size_t a = 0; a < algos.size(); ++a) {
    for (const std::size_t c : columns) {
      std::size_t hits = 0;
      for (const auto& f : first) hits += f[a] && *f[a] < c;
      table.add({to_string(algos[a]), std::to_string(c), rate(hits, count),
                 std::to_string(count), ctx.seed()});
    }
  }
  return {{"table-orders.csv", table}};
}

// Cumulative fraction of instances whose minimal margin is at most each grid
// value.
void add_cdf(CsvTable& table, const std::vector<std::string>& prefix,
             const std::vector<std::optional<Slot>>& minimal,
             std::span<const Slot> grid, const std::string& seed) {
  for (const Slot m : grid) {
    std::size_t hits = 0;
    for (const auto& v : minimal) hits += v && *v <= m;
    auto row = prefix;
    row.insert(row.end(), {std::to_string(m), rate(hits, minimal.size()),
                           std::to_string(minimal.size()), seed});
    table.add(std::move(row));
  }
}

Tables fig_hard(const Context& ctx, bool two_groups, const std::string& file) {
  const std::size_t count = ctx.count(200, 10000);
  const auto grid = margin_grid(3000, 100);
  CsvTable table(
      {"halfwidth", "margin", "cumulative_fraction", "instances", "seed"});
  for (const Slot halfwidth : {0, 400, 800, 1600, 2400, 3200}) {
    const WeightModel weights =
        two_groups ? WeightModel::two_band(PeriodExpr::parse("P"),
                                           PeriodExpr::parse("P/2"), halfwidth)
                   : WeightModel::band(PeriodExpr::parse("P"), halfwidth);
    std::vector<std::optional<Slot>> minimal(count);
    ctx.each(count, [&](std::size_t k) {
      const auto raw = generate(spec_for(8, {95, 100}, weights, ctx.seed_of(k)));
      minimal[k] = minimal_margin(
          raw,
          {BackwardAlgo::kPMLS, OrderKind::kRO, ctx.orders(),
           order_seed(ctx.seed_of(k))},
          grid);
    });
    add_cdf(table, {std::to_string(halfwidth)}, minimal, grid, ctx.seed());
  }
  return {{file, table}};
}

constexpr std::size_t kStatmuxPeriods = 1000;
const Rational kLightLoad{1, 2};

Tables fig_statmux(const Context& ctx) {
  const std::size_t count = ctx.count(300, 10000);
  const auto pmls_grid = margin_grid(3000, 100);
  const auto grid = margin_grid(20000, 250);
  CsvTable table({"topology", "series", "margin", "cumulative_fraction",
                  "instances", "seed"});
  const std::vector<std::pair<std::string, WeightModel>> topologies = {
      {"uniform", kUniformWeights},
      {"band", WeightModel::band(PeriodExpr::parse("P"), 800)}};
  for (const auto& [topology, weights] : topologies) {
    std::vector<std::optional<Slot>> high(count), light(count), pmls(count);
    ctx.each(count, [&](std::size_t k) {
      const std::uint64_t s = ctx.seed_of(k);
      for (const bool is_high : {true, false}) {
        const auto raw = generate(
            spec_for(8, is_high ? Rational{95, 100} : kLightLoad, weights, s));
        const auto report = simulate_statmux(
            raw, random_offsets(raw, order_seed(s)), kStatmuxPeriods);
        (is_high ? high : light)[k] = std::max<Slot>(0, report.margin);
        if (is_high) {
          pmls[k] = minimal_margin(
              raw,
              {BackwardAlgo::kPMLS, OrderKind::kRO, ctx.orders(), order_seed(s)},
              pmls_grid);
        }
      }
    });
    add_cdf(table, {topology, "statmux-high"}, high, grid, ctx.seed());
    add_cdf(table, {topology, "statmux-light"}, light, grid, ctx.seed());
    add_cdf(table, {topology, "pmls-high"}, pmls, grid, ctx.seed());
  }
  return {{"fig-statmux.csv", table}};
}

Tables table_compact_time(const Context& ctx) {
  const std::size_t count = ctx.count(20, 100);
  std::vector<std::size_t> sizes = {8, 10, 12, 14};
  if (ctx.options.full) sizes.push_back(16);
  CsvTable table({"n", "mean_nodes", "mean_seconds", "found_rate", "instances",
                  "seed"});
  for (const std::size_t n : sizes) {
    const auto cost = compact_search_cost(n, count, ctx.options.seed);
    table.add({std::to_string(n), format_number(cost.mean_nodes),
               format_number(cost.mean_seconds), format_number(cost.found_rate),
               std::to_string(count), ctx.seed()});
  }
  return {{"table-compact-time.csv", table}};
}

Tables table_pmls_time(const Context& ctx) {
  const std::size_t count = ctx.count(200, 1000);
  CsvTable table(
      {"n", "algorithm", "mean_ms", "success_rate", "instances", "seed"});
  for (const std::size_t n : {8, 12, 16, 20, 24}) {
    for (const BackwardAlgo algo : {BackwardAlgo::kPMLS, BackwardAlgo::kFPTPMLS}) {
      if (algo == BackwardAlgo::kFPTPMLS && n > 16 && !ctx.options.full) continue;
      const auto cost = backward_cost(algo, n, count, ctx.options.seed);
      table.add({std::to_string(n), to_string(algo), format_number(cost.mean_ms),
                 format_number(cost.success_rate), std::to_string(count),
                 ctx.seed()});
    }
  }
  return {{"table-pmls-time.csv", table}};
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "fig-short",     "fig-long",      "fig-orders-80",      "fig-orders-95",
      "fig-margin-95", "table-orders",  "fig-hard-1grp",      "fig-hard-2grp",
      "fig-statmux",   "table-compact-time", "table-pmls-time"};
  return names;
}

Tables experiment_tables(const ExperimentOptions& options) {
  const Context ctx{options};
  const std::string& name = options.name;
  if (name == "fig-short") return fig_short(ctx);
  if (name == "fig-long") return fig_long(ctx);
  if (name == "fig-orders-80") return fig_orders(ctx, {80, 100}, "fig-orders-80.csv");
  if (name == "fig-orders-95") return fig_orders(ctx, {95, 100}, "fig-orders-95.csv");
  if (name == "fig-margin-95") return fig_margin_95(ctx);
  if (name == "table-orders") return table_orders(ctx);
  if (name == "fig-hard-1grp") return fig_hard(ctx, false, "fig-hard-1grp.csv");
  if (name == "fig-hard-2grp") return fig_hard(ctx, true, "fig-hard-2grp.csv");
  if (name == "fig-statmux") return fig_statmux(ctx);
  if (name == "table-compact-time") return table_compact_time(ctx);
  if (name == "table-pmls-time") return table_pmls_time(ctx);
  throw std::invalid_argument("unknown experiment \"" + name + "\"");
}

std::vector<std::filesystem::path> run_experiment(
    const ExperimentOptions& options) {
  const auto tables = experiment_tables(options);
  std::filesystem::create_directories(options.out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& [file, table] : tables) {
    written.push_back(options.out_dir / file);
    table.write(written.back());
  }
  return written;
}

}  // namespace periodic
