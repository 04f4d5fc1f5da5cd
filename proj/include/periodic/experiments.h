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

#ifndef PERIODIC_EXPERIMENTS_H_
#define PERIODIC_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "periodic/instances.h"
#include "periodic/model.h"
#include "periodic/pall.h"

namespace periodic {

// Minimal CSV table: header row, comma separated, dot decimal.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& add(std::vector<std::string> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_number(double value);
std::string format_number(std::int64_t value);

// Calls body(i) for every i < count on `threads` workers (0 = one per
// hardware thread). Rethrows the first exception after all workers stop.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

// Seed of instance `index` of an experiment, and the seed of its random
// orders.
inline std::uint64_t instance_seed(std::uint64_t seed, std::size_t index) {
  return seed + index;
}
std::uint64_t order_seed(std::uint64_t instance_seed);

// Re-validates a canonical assignment, both canonically and on the raw star
// network with explicit slot sets.
bool verified(const RawStarInstance& raw, const CanonicalStarInstance& inst,
              const Assignment& asg);

// Margins 0, step, 2*step, ..., up to `last`.
std::vector<Slot> margin_grid(Slot last, Slot step);

struct OrderSearch {
  BackwardAlgo algo = BackwardAlgo::kPMLS;
  OrderKind kind = OrderKind::kRO;
  std::size_t orders = 1000;
  std::uint64_t seed = 0;
};

// For each margin of the grid (increasing), whether some of the orders
// solves the instance with that uniform margin. GD, PMLS and FPT-PMLS can
// only gain from a larger margin, which lets each order be tested at just the
// next margin below the best one found so far; MLS is tested at every margin.
std::vector<bool> solved_at_margins(const RawStarInstance& raw,
                                    const OrderSearch& search,
                                    std::span<const Slot> margins);

// Smallest grid margin solved, if any.
std::optional<Slot> minimal_margin(const RawStarInstance& raw,
                                   const OrderSearch& search,
                                   std::span<const Slot> margins);

// Index of the first order that solves `raw` as given.
std::optional<std::size_t> first_success(const RawStarInstance& raw,
                                         const OrderSearch& search);

// Exhaustive PAZL search cost at 95% load, n routes, tail weights
// U[0, 20000]: means over `count` instances.
struct SearchCost {
  double mean_nodes = 0;
  double mean_seconds = 0;
  double found_rate = 0;
};
SearchCost compact_search_cost(std::size_t n, std::size_t count,
                               std::uint64_t seed);

// Stage-2 cost at 95% load, margin 0, weights U[0, 20000] on both sides: one
// random order per instance, mean wall time of `algo` on it.
struct BackwardCost {
  double mean_ms = 0;
  double success_rate = 0;
};
BackwardCost backward_cost(BackwardAlgo algo, std::size_t n, std::size_t count,
                           std::uint64_t seed);

struct ExperimentOptions {
  std::string name;
  std::size_t count = 0;   // instances per point; 0 = experiment default
  std::size_t orders = 0;  // random orders; 0 = experiment default
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  bool full = false;  // paper-scale counts
  std::filesystem::path out_dir = ".";
};

const std::vector<std::string>& experiment_names();

// Runs one named experiment and writes its CSV file(s) into out_dir, returning
// their paths. Throws std::invalid_argument for unknown names.
std::vector<std::filesystem::path> run_experiment(
    const ExperimentOptions& options);

// The tables behind run_experiment(), without touching the file system.
std::vector<std::pair<std::string, CsvTable>> experiment_tables(
    const ExperimentOptions& options);

}  // namespace periodic

#endif  // PERIODIC_EXPERIMENTS_H_
