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

#include "periodic/model.h"

#include <gtest/gtest.h>

#include <set>

#include "periodic/instances.h"
#include "periodic/rng.h"

namespace periodic {
namespace {

std::vector<Slot> sorted(std::vector<Slot> v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST(SlotSetTest, WrapsModuloPeriod) {
  EXPECT_EQ(slot_set(3, 5, 3), (std::vector<Slot>{3, 4, 0}));
  EXPECT_EQ(slot_set(0, 8, 1), (std::vector<Slot>{0}));
  EXPECT_EQ(slot_set(7, 8, 2), (std::vector<Slot>{7, 0}));
}

TEST(SlotSetTest, NegativeStart) {
  EXPECT_EQ(slot_set(-1, 4, 2), (std::vector<Slot>{3, 0}));
}

TEST(SlotSetTest, AlwaysTauDistinctSlots) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Slot period = rng.uniform(1, 40);
    const Slot tau = rng.uniform(1, period);
    const Slot t = rng.uniform(-100, 100);
    const auto slots = slot_set(t, period, tau);
    ASSERT_EQ(static_cast<Slot>(slots.size()), tau);
    std::set<Slot> distinct(slots.begin(), slots.end());
    EXPECT_EQ(static_cast<Slot>(distinct.size()), tau);
    for (Slot s : slots) {
      EXPECT_GE(s, 0);
      EXPECT_LT(s, period);
    }
  }
}

TEST(CyclicOverlapTest, MatchesExplicitSlotSets) {
  for (Slot period = 1; period <= 9; ++period) {
    for (Slot tau = 1; tau <= period; ++tau) {
      for (Slot x = 0; x < period; ++x) {
        for (Slot y = 0; y < period; ++y) {
          const auto a = slot_set(x, period, tau);
          const auto b = slot_set(y, period, tau);
          std::set<Slot> sa(a.begin(), a.end());
          bool shared = false;
          for (Slot s : b) shared = shared || sa.count(s) > 0;
          EXPECT_EQ(cyclic_overlap(x, y, period, tau), shared)
              << "P=" << period << " tau=" << tau << " x=" << x << " y=" << y;
        }
      }
    }
  }
}

TEST(LatencyTest, Figure1Routes) {
  const Figure1 fig = figure1_network();
  // r_0 = (s_0, A, B, E, F, t_0); E is at position 3.
  EXPECT_EQ(latency(fig.network, 0, 3), 3);
  EXPECT_EQ(latency(fig.network, 0, 0), 0);
  EXPECT_EQ(latency(fig.network, 1, 0), 0);
  // r_1 = (s_1, A, B, C, D, t_1); C at position 3, weights 2 + 1 + 2.
  EXPECT_EQ(latency(fig.network, 1, 3), 5);
  // r_2 = (s_2, E, F, C, D, t_2); C at position 3.
  EXPECT_EQ(latency(fig.network, 2, 3), 4);
}

TEST(LatencyTest, RejectsBadIndices) {
  const Figure1 fig = figure1_network();
  EXPECT_THROW(latency(fig.network, 3, 0), std::out_of_range);
  EXPECT_THROW(latency(fig.network, 0, 6), std::out_of_range);
}

TEST(RoutedNetworkTest, RejectsRouteWithoutArc) {
  RoutedNetwork net;
  const auto u = net.add_vertex("u");
  const auto v = net.add_vertex("v");
  EXPECT_THROW(net.add_route({u, v}), std::invalid_argument);
  net.add_arc(u, v, 3);
  EXPECT_EQ(net.add_route({u, v}), 0u);
  EXPECT_EQ(net.weight(u, v), 3);
  EXPECT_FALSE(net.weight(v, u).has_value());
  EXPECT_EQ(net.find_vertex("v"), v);
  EXPECT_FALSE(net.find_vertex("w").has_value());
}

TEST(ValidatePraTest, Figure1AllZeroIsValid) {
  const Figure1 fig = figure1_network();
  EXPECT_TRUE(validate_pra(fig.network, fig.offsets, 2, 1).empty());
}

// Independent check: the slot sets of every route pair on every shared arc.
std::set<std::pair<std::size_t, std::size_t>> colliding_pairs(
    const RoutedNetwork& net, std::span<const Slot> offsets, Slot period,
    Slot tau) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < net.num_routes(); ++i) {
    for (std::size_t j = i + 1; j < net.num_routes(); ++j) {
      const auto& ri = net.route(i);
      const auto& rj = net.route(j);
      for (std::size_t p = 0; p + 1 < ri.size(); ++p) {
        for (std::size_t q = 0; q + 1 < rj.size(); ++q) {
          if (ri[p] != rj[q] || ri[p + 1] != rj[q + 1]) continue;
          const auto a = slot_set(offsets[i] + latency(net, i, p), period, tau);
          const auto b = slot_set(offsets[j] + latency(net, j, q), period, tau);
          for (Slot s : a) {
            if (std::find(b.begin(), b.end(), s) != b.end()) out.insert({i, j});
          }
        }
      }
    }
  }
  return out;
}

TEST(ValidatePraTest, Figure1CollisionOnAB) {
  const Figure1 fig = figure1_network();
  const std::vector<Slot> offsets = {0, 1, 0};
  const auto collisions = validate_pra(fig.network, offsets, 2, 1);
  ASSERT_FALSE(collisions.empty());
  const auto a = *fig.network.find_vertex("A");
  const auto b = *fig.network.find_vertex("B");
  bool on_ab = false;
  for (const auto& c : collisions) {
    if (c.first_route == 0 && c.second_route == 1 && c.from == a && c.to == b) {
      on_ab = true;
    }
  }
  EXPECT_TRUE(on_ab);
  const auto expected = colliding_pairs(fig.network, offsets, 2, 1);
  EXPECT_TRUE(expected.count({0, 1}));
}

TEST(ValidatePraTest, Figure1AgreesWithSlotSetsOnAllOffsets) {
  const Figure1 fig = figure1_network();
  std::size_t valid = 0;
  for (Slot x = 0; x < 2; ++x) {
    for (Slot y = 0; y < 2; ++y) {
      for (Slot z = 0; z < 2; ++z) {
        const std::vector<Slot> offsets = {x, y, z};
        const auto collisions = validate_pra(fig.network, offsets, 2, 1);
        std::set<std::pair<std::size_t, std::size_t>> got;
        for (const auto& c : collisions) got.insert({c.first_route, c.second_route});
        EXPECT_EQ(got, colliding_pairs(fig.network, offsets, 2, 1));
        if (collisions.empty()) ++valid;
      }
    }
  }
  EXPECT_GE(valid, 1u);
}

TEST(ValidatePraTest, IdenticalSingleArcRoutesCollide) {
  RoutedNetwork net;
  const auto u = net.add_vertex("u");
  const auto v = net.add_vertex("v");
  net.add_arc(u, v, 1);
  net.add_route({u, v});
  net.add_route({u, v});
  const std::vector<Slot> offsets = {0, 0};
  const auto collisions = validate_pra(net, offsets, 4, 1);
  ASSERT_EQ(collisions.size(), 1u);
  EXPECT_EQ(collisions[0], (ArcCollision{0, 1, u, v}));
}

TEST(CanonicalizeTest, ThreeStepExample) {
  RawStarInstance raw;
  raw.period = 20;
  raw.tau = 2;
  raw.source_weights = {1, 2};
  raw.central_weight = 3;
  raw.tail_weights = {4, 5};
  raw.deadlines = {30, 30};
  const auto inst = canonicalize(raw);
  EXPECT_EQ(inst.round_trip, (std::vector<Slot>{8, 10}));
  EXPECT_EQ(inst.deadline, (std::vector<Slot>{22, 20}));
  EXPECT_EQ(inst.shift, (std::vector<Slot>{1, 2}));
  // 2(1+3+4) + w <= 30  iff  8 + w <= 22.
  for (Slot w = 0; w < 20; ++w) {
    const Slot raw_pt = 2 * raw.route_length(0) + w;
    EXPECT_EQ(raw_pt <= 30, inst.round_trip[0] + w <= inst.deadline[0]);
  }
}

TEST(CanonicalizeTest, NoSourceOrCentralWeightIsIdentity) {
  RawStarInstance raw;
  raw.period = 50;
  raw.tau = 3;
  raw.source_weights = {0, 0, 0};
  raw.central_weight = 0;
  raw.tail_weights = {4, 11, 24};
  raw.deadlines = {60, 61, 62};
  const auto inst = canonicalize(raw);
  EXPECT_EQ(inst.round_trip, (std::vector<Slot>{8, 22, 48}));
  EXPECT_EQ(inst.deadline, raw.deadlines);
  EXPECT_EQ(inst.shift, (std::vector<Slot>{0, 0, 0}));
  const Assignment asg{{1, 7, 13}, {0, 2, 5}};
  EXPECT_EQ(to_raw(inst, asg), asg);
}

TEST(CanonicalizeTest, SingleFold) {
  RawStarInstance raw;
  raw.period = 10;
  raw.tau = 1;
  raw.source_weights = {0};
  raw.tail_weights = {7};
  raw.deadlines = {40};
  const auto inst = canonicalize(raw);
  EXPECT_EQ(inst.round_trip[0], 4);
  EXPECT_EQ(inst.deadline[0], 30);
  EXPECT_EQ(inst.folds[0], 1);
  EXPECT_EQ(inst.unfolded_round_trip(0), 14);
}

TEST(RawStarInstanceTest, CheckRejectsBrokenInvariants) {
  RawStarInstance raw;
  raw.period = 10;
  raw.tau = 2;
  raw.source_weights = {0};
  raw.tail_weights = {1};
  raw.deadlines = {5};
  EXPECT_NO_THROW(raw.check());
  auto bad = raw;
  bad.tau = 11;
  EXPECT_THROW(bad.check(), std::invalid_argument);
  bad = raw;
  bad.deadlines = {};
  EXPECT_THROW(bad.check(), std::invalid_argument);
  bad = raw;
  bad.tail_weights = {-1};
  EXPECT_THROW(bad.check(), std::invalid_argument);
  bad = raw;
  bad.central_weight = -1;
  EXPECT_THROW(bad.check(), std::invalid_argument);
  bad = raw;
  bad.source_weights = {};
  bad.tail_weights = {};
  bad.deadlines = {};
  EXPECT_THROW(bad.check(), std::invalid_argument);
}

TEST(CanonicalStarInstanceTest, MakeRejectsRoundTripOutsidePeriod) {
  EXPECT_THROW(CanonicalStarInstance::make(4, 1, {4}, {9}),
               std::invalid_argument);
  EXPECT_THROW(CanonicalStarInstance::make(4, 5, {0}, {9}),
               std::invalid_argument);
  EXPECT_NO_THROW(CanonicalStarInstance::make(4, 1, {3}, {9}));
}

TEST(ValidatePallTest, SingleRoute) {
  const auto inst = CanonicalStarInstance::make(10, 3, {6}, {6});
  for (Slot m = 0; m < 10; ++m) {
    EXPECT_TRUE(validate_pall(inst, {{m}, {0}}).empty());
  }
  const auto v = validate_pall(inst, {{0}, {1}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kDeadline);
}

TEST(ValidatePallTest, PackedPairIsValid) {
  const auto inst = CanonicalStarInstance::make(4, 2, {0, 0}, {4, 4});
  EXPECT_TRUE(validate_pall(inst, {{0, 2}, {0, 0}}).empty());
}

TEST(ValidatePallTest, BackwardCollision) {
  const auto inst = CanonicalStarInstance::make(4, 2, {0, 2}, {4, 4});
  const Assignment asg{{0, 2}, {0, 0}};
  EXPECT_EQ(backward_start(inst, asg, 0), 0);
  EXPECT_EQ(backward_start(inst, asg, 1), 0);
  const auto v = validate_pall(inst, asg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kBackwardCollision);
  EXPECT_EQ(v[0].first, 0u);
  EXPECT_EQ(v[0].second, 1u);
}

TEST(ValidatePallTest, ForwardCollisionAndMalformed) {
  const auto inst = CanonicalStarInstance::make(8, 2, {0, 4}, {8, 8});
  const auto v = validate_pall(inst, {{0, 1}, {0, 0}});
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::kForwardCollision);
  EXPECT_EQ(validate_pall(inst, {{0, 8}, {0, 0}})[0].kind,
            ViolationKind::kMalformed);
  EXPECT_EQ(validate_pall(inst, {{0, 2}, {0, -1}})[0].kind,
            ViolationKind::kMalformed);
  EXPECT_EQ(validate_pall(inst, {{0}, {0}})[0].kind, ViolationKind::kMalformed);
}

// Small random raw instance; weights may exceed the period.
RawStarInstance random_raw(SplitMix64& rng) {
  RawStarInstance raw;
  const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
  raw.period = rng.uniform(2, 16);
  raw.tau = rng.uniform(1, std::max<Slot>(1, raw.period / static_cast<Slot>(n)));
  raw.central_weight = rng.uniform(0, 2 * raw.period);
  for (std::size_t i = 0; i < n; ++i) {
    raw.source_weights.push_back(rng.uniform(0, 2 * raw.period));
    raw.tail_weights.push_back(rng.uniform(0, 2 * raw.period));
  }
  for (std::size_t i = 0; i < n; ++i) {
    raw.deadlines.push_back(2 * raw.route_length(i) + rng.uniform(-2, raw.period));
  }
  return raw;
}

Assignment random_assignment(SplitMix64& rng, std::size_t n, Slot period) {
  Assignment asg;
  for (std::size_t i = 0; i < n; ++i) {
    asg.offsets.push_back(rng.uniform(0, period - 1));
    asg.waits.push_back(rng.uniform(0, period));
  }
  return asg;
}

TEST(ValidatePallProperty, CanonicalAgreesWithRawSlotSets) {
  SplitMix64 rng(2024);
  std::size_t valid = 0, invalid = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const RawStarInstance raw = random_raw(rng);
    const auto inst = canonicalize(raw);
    for (int k = 0; k < 4; ++k) {
      const Assignment raw_asg = random_assignment(rng, raw.size(), raw.period);
      const bool raw_ok = validate_raw(raw, raw_asg).empty();
      const Assignment canon = to_canonical(inst, raw_asg);
      EXPECT_EQ(raw_ok, validate_pall(inst, canon).empty()) << "trial " << trial;
      EXPECT_EQ(to_raw(inst, canon), raw_asg);
      (raw_ok ? valid : invalid) += 1;
    }
  }
  EXPECT_GT(valid, 100u);
  EXPECT_GT(invalid, 100u);
}

TEST(ValidatePallProperty, RotationInvariant) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = canonicalize(random_raw(rng));
    Assignment asg = random_assignment(rng, inst.size(), inst.period);
    const bool ok = validate_pall(inst, asg).empty();
    const Slot delta = rng.uniform(0, inst.period - 1);
    for (Slot& m : asg.offsets) m = mod_floor(m + delta, inst.period);
    EXPECT_EQ(validate_pall(inst, asg).empty(), ok);
  }
}

TEST(ValidatePallProperty, FastCheckAgrees) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto inst = canonicalize(random_raw(rng));
    const Assignment asg = random_assignment(rng, inst.size(), inst.period);
    EXPECT_EQ(is_valid(inst, asg), validate_pall(inst, asg).empty());
  }
}

TEST(ValidatePallProperty, ValidForwardSetsCoverNTauSlots) {
  SplitMix64 rng(17);
  std::size_t checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto inst = canonicalize(random_raw(rng));
    const Assignment asg = random_assignment(rng, inst.size(), inst.period);
    if (!validate_pall(inst, asg).empty()) continue;
    std::set<Slot> forward, backward;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (Slot s : slot_set(asg.offsets[i], inst.period, inst.tau)) forward.insert(s);
      for (Slot s : slot_set(backward_start(inst, asg, i), inst.period, inst.tau)) {
        backward.insert(s);
      }
    }
    EXPECT_EQ(static_cast<Slot>(forward.size()),
              static_cast<Slot>(inst.size()) * inst.tau);
    EXPECT_EQ(static_cast<Slot>(backward.size()),
              static_cast<Slot>(inst.size()) * inst.tau);
    ++checked;
  }
  EXPECT_GT(checked, 50u);
}

TEST(RawProcessTimesTest, RoundTripPlusWait) {
  RawStarInstance raw;
  raw.period = 20;
  raw.tau = 2;
  raw.source_weights = {1, 2};
  raw.central_weight = 3;
  raw.tail_weights = {4, 5};
  raw.deadlines = {30, 30};
  EXPECT_EQ(raw_process_times(raw, {{0, 5}, {2, 0}}), (std::vector<Slot>{18, 20}));
}

TEST(StarNetworkTest, ShapeOfExplicitNetwork) {
  RawStarInstance raw;
  raw.period = 20;
  raw.tau = 2;
  raw.source_weights = {1, 2};
  raw.central_weight = 3;
  raw.tail_weights = {4, 5};
  raw.deadlines = {30, 30};
  const auto net = star_network(raw);
  EXPECT_EQ(net.num_routes(), 4u);
  EXPECT_EQ(net.num_vertices(), 6u);
  EXPECT_EQ(latency(net, 1, 3), 2 + 3 + 5);
  EXPECT_EQ(sorted({latency(net, 2, 2), latency(net, 3, 2)}),
            (std::vector<Slot>{7, 8}));
}

}  // namespace
}  // namespace periodic
