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

#ifndef PERIODIC_INSTANCES_H_
#define PERIODIC_INSTANCES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "periodic/model.h"

namespace periodic {

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  // Accepts "0.95", "1/3" or "1".
  static Rational parse(const std::string& text);
  double value() const { return static_cast<double>(num) / den; }
};

// Period whose load n*tau/P is closest to `load` among integers P >= n*tau;
// ties go to the larger period. Exact integer arithmetic.
Slot period_for_load(std::size_t n, Slot tau, Rational load);

// A weight range endpoint expressed as `constant + fraction * P`.
struct PeriodExpr {
  Slot constant = 0;
  Rational fraction{0, 1};

  // Accepts "P", "P/2", "2P", "12000".
  static PeriodExpr parse(const std::string& text);
  Slot eval(Slot period) const;
};

struct WeightModel {
  enum class Kind { kUniform, kBand, kTwoBand };
  Kind kind = Kind::kUniform;
  Slot low = 0;   // kUniform
  Slot high = 0;  // kUniform
  PeriodExpr center;         // kBand, first group of kTwoBand
  PeriodExpr second_center;  // second group of kTwoBand
  Slot halfwidth = 0;

  static WeightModel uniform(Slot low, Slot high);
  static WeightModel band(PeriodExpr center, Slot halfwidth);
  static WeightModel two_band(PeriodExpr first, PeriodExpr second,
                              Slot halfwidth);
  // "uniform:0:20000", "band:P:800", "twoband:P:P/2:800".
  static WeightModel parse(const std::string& text);
  std::string to_string() const;
};

struct GenSpec {
  std::size_t n = 8;
  Slot tau = 2500;
  Rational load{95, 100};
  WeightModel weights = WeightModel::uniform(0, 20000);
  Slot margin = 0;
  std::uint64_t seed = 0;
  // Draw only the tail weights b_i; source weights stay 0.
  bool tail_only = false;

  void check() const;
};

// Deterministic in spec.seed. Draw order, per route i: a_i (unless
// tail_only) then b_i. The central weight is 0 and every route gets the
// deadline 2 * longest route + margin.
RawStarInstance generate(const GenSpec& spec);

// Same instance with every deadline reset to 2 * longest route + margin.
RawStarInstance with_margin(RawStarInstance raw, Slot margin);

struct Figure1 {
  RoutedNetwork network;
  std::vector<Slot> offsets;
  Slot period = 2;
  Slot tau = 1;
};

// Three routes, every pair meeting on its own arc with a latency difference
// of one slot, so that all-zero offsets form a (2,1)-periodic assignment.
Figure1 figure1_network();

}  // namespace periodic

#endif  // PERIODIC_INSTANCES_H_
