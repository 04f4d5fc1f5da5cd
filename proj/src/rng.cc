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

#include "periodic/rng.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace periodic {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64 bits
  // Largest multiple of span representable; draws at or above it are rejected.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span + 1) % span;
  std::uint64_t x = next();
  while (x > limit) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

std::vector<std::size_t> SplitMix64::permutation(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle(std::span<std::size_t>(order));
  return order;
}

std::vector<std::int64_t> SplitMix64::weak_composition(std::int64_t total,
                                                       std::size_t parts) {
  if (parts == 0) throw std::invalid_argument("weak_composition: no parts");
  if (total < 0) throw std::invalid_argument("weak_composition: total < 0");
  // Choose parts-1 bar positions among total+parts-1 cells (Floyd's
  // sampling), then read off the gaps between bars.
  const std::int64_t cells = total + static_cast<std::int64_t>(parts) - 1;
  const std::int64_t bars = static_cast<std::int64_t>(parts) - 1;
  std::vector<std::int64_t> chosen;
  chosen.reserve(parts);
  for (std::int64_t j = cells - bars; j < cells; ++j) {
    const std::int64_t t = uniform(0, j);
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::int64_t> out;
  out.reserve(parts);
  std::int64_t prev = -1;
  for (std::int64_t bar : chosen) {
    out.push_back(bar - prev - 1);
    prev = bar;
  }
  out.push_back(cells - prev - 1);
  return out;
}

}  // namespace periodic
