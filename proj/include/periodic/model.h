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

#ifndef PERIODIC_MODEL_H_
#define PERIODIC_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace periodic {

// All times and weights are integral slot counts.
using Slot = std::int64_t;

// Non-negative remainder of `t` modulo `period`.
inline Slot mod_floor(Slot t, Slot period) {
  const Slot r = t % period;
  return r < 0 ? r + period : r;
}

// True iff the cyclic intervals [x, x+tau) and [y, y+tau) modulo `period`
// share a slot. Requires 1 <= tau <= period.
inline bool cyclic_overlap(Slot x, Slot y, Slot period, Slot tau) {
  const Slot d = mod_floor(y - x, period);
  return d < tau || period - d < tau;
}

// Returns {t + i mod period : 0 <= i < tau}, in emission order.
std::vector<Slot> slot_set(Slot t, Slot period, Slot tau);

// ---------------------------------------------------------------------------
// General routed networks (validation only).

class RoutedNetwork {
 public:
  using Vertex = int;
  using Route = std::vector<Vertex>;

  Vertex add_vertex(std::string name);
  void add_arc(Vertex from, Vertex to, Slot weight);
  // Throws std::invalid_argument if two consecutive vertices are not joined
  // by an arc.
  std::size_t add_route(Route route);

  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_routes() const { return routes_.size(); }
  const Route& route(std::size_t index) const { return routes_.at(index); }
  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find_vertex(const std::string& name) const;
  std::optional<Slot> weight(Vertex from, Vertex to) const;

 private:
  std::vector<std::string> names_;
  std::map<std::pair<Vertex, Vertex>, Slot> arcs_;
  std::vector<Route> routes_;
};

// Latency of the vertex at `position` along route `route_index`: the sum of
// the weights of the arcs before it. Throws std::out_of_range on bad indices.
Slot latency(const RoutedNetwork& net, std::size_t route_index,
             std::size_t position);

struct ArcCollision {
  std::size_t first_route;
  std::size_t second_route;
  RoutedNetwork::Vertex from;
  RoutedNetwork::Vertex to;

  friend bool operator==(const ArcCollision&, const ArcCollision&) = default;
};

// Every pair of routes whose slot sets intersect on a shared arc. Empty means
// `offsets` is a (period, tau)-periodic assignment.
std::vector<ArcCollision> validate_pra(const RoutedNetwork& net,
                                       std::span<const Slot> offsets,
                                       Slot period, Slot tau);

// ---------------------------------------------------------------------------
// Star routed networks.

// Raw star instance. Route i is s_i -> c_s -> c_t -> t_i and back; the two
// central arcs are the only shared resources.
struct RawStarInstance {
  Slot period = 1;
  Slot tau = 1;
  std::vector<Slot> source_weights;  // Omega(s_i, c_s)
  Slot central_weight = 0;           // Omega(c_s, c_t)
  std::vector<Slot> tail_weights;    // Omega(c_t, t_i)
  std::vector<Slot> deadlines;

  std::size_t size() const { return tail_weights.size(); }
  Slot route_length(std::size_t i) const {
    return source_weights[i] + central_weight + tail_weights[i];
  }
  Slot longest_route() const;

  // Throws std::invalid_argument describing the first broken invariant.
  void check() const;
};

// Solver form: the central and source-side weights are eliminated and the
// round trip behind the central node is folded into [0, period).
struct CanonicalStarInstance {
  Slot period = 1;
  Slot tau = 1;
  std::vector<Slot> round_trip;  // R_i in [0, period)
  std::vector<Slot> deadline;    // bound on R_i + w_i
  // Raw offset m maps to canonical offset (m + shift_i) mod period.
  std::vector<Slot> shift;
  // Number of periods removed from the raw round trip 2 b_i.
  std::vector<Slot> folds;

  std::size_t size() const { return round_trip.size(); }
  Slot unfolded_round_trip(std::size_t i) const {
    return round_trip[i] + folds[i] * period;
  }

  // Builds a canonical instance directly (shift and folds all zero).
  static CanonicalStarInstance make(Slot period, Slot tau,
                                    std::vector<Slot> round_trip,
                                    std::vector<Slot> deadline);
  void check() const;
};

CanonicalStarInstance canonicalize(const RawStarInstance& raw);

// Offsets and waiting times. Waiting times are kept unwrapped.
struct Assignment {
  std::vector<Slot> offsets;
  std::vector<Slot> waits;

  std::size_t size() const { return offsets.size(); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

enum class ViolationKind {
  kMalformed,
  kForwardCollision,
  kBackwardCollision,
  kDeadline,
};

struct Violation {
  ViolationKind kind;
  std::size_t first = 0;
  std::size_t second = 0;  // only meaningful for collisions
  std::string detail;

  friend bool operator==(const Violation& a, const Violation& b) {
    return a.kind == b.kind && a.first == b.first && a.second == b.second;
  }
};

std::string to_string(ViolationKind kind);

// Checks forward and backward disjointness on the central arc and the
// process-time constraint of every route. Empty result means valid.
std::vector<Violation> validate_pall(const CanonicalStarInstance& inst,
                                     const Assignment& asg);
// Same verdict as validate_pall(), in O(n log n).
bool is_valid(const CanonicalStarInstance& inst, const Assignment& asg);

// Start of route i's answer on the backward central arc, modulo the period.
inline Slot backward_start(const CanonicalStarInstance& inst,
                           const Assignment& asg, std::size_t i) {
  return mod_floor(asg.offsets[i] + inst.round_trip[i] + asg.waits[i],
                   inst.period);
}

// Conversions between the raw and canonical frames. Waiting times are
// identical in both frames.
Assignment to_raw(const CanonicalStarInstance& inst, const Assignment& asg);
Assignment to_canonical(const CanonicalStarInstance& inst,
                        const Assignment& raw_asg);

// Raw process times 2 lambda(r_i) + w_i.
std::vector<Slot> raw_process_times(const RawStarInstance& raw,
                                    const Assignment& raw_asg);

// The full-duplex star as a general routed network: routes 0..n-1 are the
// forward routes, n..2n-1 the backward ones.
RoutedNetwork star_network(const RawStarInstance& raw);

// Validates a raw assignment on the explicit star network (slot sets on every
// arc) together with the raw deadlines. Independent of canonicalize().
std::vector<Violation> validate_raw(const RawStarInstance& raw,
                                    const Assignment& raw_asg);

}  // namespace periodic

#endif  // PERIODIC_MODEL_H_
