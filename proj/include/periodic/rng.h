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

#ifndef PERIODIC_RNG_H_
#define PERIODIC_RNG_H_

#include <cstdint>
#include <span>
#include <vector>

namespace periodic {

// splitmix64 stream. The algorithm is fixed so that instances and random
// orders reproduce bit-exactly on every platform; std::shuffle and the
// standard distributions are deliberately not used.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform integer in [lo, hi], by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  // Fisher-Yates, drawing j uniformly in [0, i] for i = n-1 down to 1.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(
          uniform(0, static_cast<std::int64_t>(i - 1)));
      std::swap(values[i - 1], values[j]);
    }
  }

  std::vector<std::size_t> permutation(std::size_t n);

  // Uniformly random weak composition of `total` into `parts` non-negative
  // summands (stars and bars).
  std::vector<std::int64_t> weak_composition(std::int64_t total,
                                             std::size_t parts);

 private:
  std::uint64_t state_;
};

}  // namespace periodic

#endif  // PERIODIC_RNG_H_
