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

#include <algorithm>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace periodic {

std::vector<Slot> slot_set(Slot t, Slot period, Slot tau) {
  std::vector<Slot> slots;
  slots.reserve(static_cast<std::size_t>(tau));
  for (Slot i = 0; i < tau; ++i) slots.push_back(mod_floor(t + i, period));
  return slots;
}

RoutedNetwork::Vertex RoutedNetwork::add_vertex(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<Vertex>(names_.size() - 1);
}

void RoutedNetwork::add_arc(Vertex from, Vertex to, Slot weight) {
  if (weight < 0) throw std::invalid_argument("arc weight must be >= 0");
  const auto n = static_cast<Vertex>(names_.size());
  if (from < 0 || from >= n || to < 0 || to >= n) {
    throw std::invalid_argument("arc endpoint is not a vertex");
  }
  arcs_[{from, to}] = weight;
}

std::size_t RoutedNetwork::add_route(Route route) {
  if (route.empty()) throw std::invalid_argument("empty route");
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    if (!arcs_.contains({route[i], route[i + 1]})) {
      throw std::invalid_argument("route uses a missing arc " +
                                  name(route[i]) + "->" + name(route[i + 1]));
    }
  }
  routes_.push_back(std::move(route));
  return routes_.size() - 1;
}

std::optional<RoutedNetwork::Vertex> RoutedNetwork::find_vertex(
    const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Vertex>(it - names_.begin());
}

std::optional<Slot> RoutedNetwork::weight(Vertex from, Vertex to) const {
  const auto it = arcs_.find({from, to});
  if (it == arcs_.end()) return std::nullopt;
  return it->second;
}

Slot latency(const RoutedNetwork& net, std::size_t route_index,
             std::size_t position) {
  if (route_index >= net.num_routes()) {
    throw std::out_of_range("route index out of range");
  }
  const auto& route = net.route(route_index);
  if (position >= route.size()) {
    throw std::out_of_range("vertex position out of range");
  }
  Slot total = 0;
  for (std::size_t j = 0; j < position; ++j) {
    total += *net.weight(route[j], route[j + 1]);
  }
  return total;
}

std::vector<ArcCollision> validate_pra(const RoutedNetwork& net,
                                       std::span<const Slot> offsets,
                                       Slot period, Slot tau) {
  if (offsets.size() != net.num_routes()) {
    throw std::invalid_argument("validate_pra needs one offset per route");
  }
  // arc -> (route, first slot at the arc's tail) for every route using it.
  std::map<std::pair<RoutedNetwork::Vertex, RoutedNetwork::Vertex>,
           std::vector<std::pair<std::size_t, Slot>>>
      users;
  for (std::size_t r = 0; r < net.num_routes(); ++r) {
    const auto& route = net.route(r);
    Slot at = offsets[r];
    for (std::size_t j = 0; j + 1 < route.size(); ++j) {
      users[{route[j], route[j + 1]}].emplace_back(r, mod_floor(at, period));
      at += *net.weight(route[j], route[j + 1]);
    }
  }

  std::vector<ArcCollision> collisions;
  for (const auto& [arc, on_arc] : users) {
    for (std::size_t x = 0; x < on_arc.size(); ++x) {
      auto first = slot_set(on_arc[x].second, period, tau);
      std::sort(first.begin(), first.end());
      for (std::size_t y = x + 1; y < on_arc.size(); ++y) {
        auto second = slot_set(on_arc[y].second, period, tau);
        std::sort(second.begin(), second.end());
        std::vector<Slot> common;
        std::set_intersection(first.begin(), first.end(), second.begin(),
                              second.end(), std::back_inserter(common));
        if (!common.empty()) {
          collisions.push_back({std::min(on_arc[x].first, on_arc[y].first),
                                std::max(on_arc[x].first, on_arc[y].first),
                                arc.first, arc.second});
        }
      }
    }
  }
  std::sort(collisions.begin(), collisions.end(),
            [](const ArcCollision& a, const ArcCollision& b) {
              return std::tie(a.first_route, a.second_route, a.from, a.to) <
                     std::tie(b.first_route, b.second_route, b.from, b.to);
            });
  return collisions;
}

Slot RawStarInstance::longest_route() const {
  Slot best = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    best = std::max(best, route_length(i));
  }
  return best;
}

void RawStarInstance::check() const {
  const std::size_t n = size();
  if (n == 0) throw std::invalid_argument("instance needs at least one route");
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  if (tau < 1 || tau > period) {
    throw std::invalid_argument("tau must satisfy 1 <= tau <= P");
  }
  if (source_weights.size() != n || deadlines.size() != n) {
    throw std::invalid_argument("a, b and d must all have n entries");
  }
  if (central_weight < 0) throw std::invalid_argument("c must be >= 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (source_weights[i] < 0 || tail_weights[i] < 0) {
      throw std::invalid_argument("arc weights must be >= 0");
    }
  }
}

CanonicalStarInstance CanonicalStarInstance::make(Slot period, Slot tau,
                                                  std::vector<Slot> round_trip,
                                                  std::vector<Slot> deadline) {
  CanonicalStarInstance inst;
  inst.period = period;
  inst.tau = tau;
  inst.round_trip = std::move(round_trip);
  inst.deadline = std::move(deadline);
  inst.shift.assign(inst.round_trip.size(), 0);
  inst.folds.assign(inst.round_trip.size(), 0);
  inst.check();
  return inst;
}

void CanonicalStarInstance::check() const {
  const std::size_t n = size();
  if (n == 0) throw std::invalid_argument("instance needs at least one route");
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  if (tau < 1 || tau > period) {
    throw std::invalid_argument("tau must satisfy 1 <= tau <= P");
  }
  if (deadline.size() != n || shift.size() != n || folds.size() != n) {
    throw std::invalid_argument("per-route vectors differ in length");
  }
  for (Slot r : round_trip) {
    if (r < 0 || r >= period) {
      throw std::invalid_argument("round trip must lie in [0, P)");
    }
  }
}

CanonicalStarInstance canonicalize(const RawStarInstance& raw) {
  raw.check();
  CanonicalStarInstance inst;
  inst.period = raw.period;
  inst.tau = raw.tau;
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Slot tail_round_trip = 2 * raw.tail_weights[i];
    const Slot folds = tail_round_trip / raw.period;
    inst.round_trip.push_back(tail_round_trip - folds * raw.period);
    inst.deadline.push_back(raw.deadlines[i] - 2 * raw.central_weight -
                            2 * raw.source_weights[i] - folds * raw.period);
    inst.shift.push_back(raw.source_weights[i]);
    inst.folds.push_back(folds);
  }
  return inst;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMalformed:
      return "malformed";
    case ViolationKind::kForwardCollision:
      return "forward collision";
    case ViolationKind::kBackwardCollision:
      return "backward collision";
    case ViolationKind::kDeadline:
      return "deadline exceeded";
  }
  return "unknown";
}

std::vector<Violation> validate_pall(const CanonicalStarInstance& inst,
                                     const Assignment& asg) {
  const std::size_t n = inst.size();
  std::vector<Violation> out;
  if (asg.offsets.size() != n || asg.waits.size() != n) {
    out.push_back({ViolationKind::kMalformed, 0, 0,
                   "assignment size does not match the instance"});
    return out;
  }
  bool malformed = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (asg.offsets[i] < 0 || asg.offsets[i] >= inst.period) {
      out.push_back({ViolationKind::kMalformed, i, i, "offset outside [0, P)"});
      malformed = true;
    }
    if (asg.waits[i] < 0) {
      out.push_back({ViolationKind::kMalformed, i, i, "negative waiting time"});
      malformed = true;
    }
  }
  if (malformed) return out;

  const Slot P = inst.period;
  const Slot tau = inst.tau;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cyclic_overlap(asg.offsets[i], asg.offsets[j], P, tau)) {
        std::ostringstream os;
        os << "forward slots of routes " << i << " and " << j << " intersect";
        out.push_back({ViolationKind::kForwardCollision, i, j, os.str()});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cyclic_overlap(backward_start(inst, asg, i),
                         backward_start(inst, asg, j), P, tau)) {
        std::ostringstream os;
        os << "backward slots of routes " << i << " and " << j << " intersect";
        out.push_back({ViolationKind::kBackwardCollision, i, j, os.str()});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Slot pt = inst.round_trip[i] + asg.waits[i];
    if (pt > inst.deadline[i]) {
      std::ostringstream os;
      os << "route " << i << " needs " << pt << " > " << inst.deadline[i];
      out.push_back({ViolationKind::kDeadline, i, i, os.str()});
    }
  }
  return out;
}

namespace {

// Cyclic intervals of length tau at `starts` are pairwise disjoint iff every
// gap between consecutive starts, the wrap-around one included, is >= tau.
bool disjoint_cyclic(std::vector<Slot>& starts, Slot period, Slot tau) {
  if (starts.size() < 2) return true;
  std::sort(starts.begin(), starts.end());
  for (std::size_t k = 1; k < starts.size(); ++k) {
    if (starts[k] - starts[k - 1] < tau) return false;
  }
  return starts.front() + period - starts.back() >= tau;
}

}  // namespace

bool is_valid(const CanonicalStarInstance& inst, const Assignment& asg) {
  const std::size_t n = inst.size();
  if (asg.offsets.size() != n || asg.waits.size() != n) return false;
  std::vector<Slot> starts(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (asg.offsets[i] < 0 || asg.offsets[i] >= inst.period) return false;
    if (asg.waits[i] < 0) return false;
    if (inst.round_trip[i] + asg.waits[i] > inst.deadline[i]) return false;
    starts[i] = asg.offsets[i];
  }
  if (!disjoint_cyclic(starts, inst.period, inst.tau)) return false;
  for (std::size_t i = 0; i < n; ++i) starts[i] = backward_start(inst, asg, i);
  return disjoint_cyclic(starts, inst.period, inst.tau);
}

Assignment to_raw(const CanonicalStarInstance& inst, const Assignment& asg) {
  Assignment raw = asg;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw.offsets[i] = mod_floor(asg.offsets[i] - inst.shift[i], inst.period);
  }
  return raw;
}

Assignment to_canonical(const CanonicalStarInstance& inst,
                        const Assignment& raw_asg) {
  Assignment asg = raw_asg;
  for (std::size_t i = 0; i < asg.size(); ++i) {
    asg.offsets[i] = mod_floor(raw_asg.offsets[i] + inst.shift[i], inst.period);
  }
  return asg;
}

std::vector<Slot> raw_process_times(const RawStarInstance& raw,
                                    const Assignment& raw_asg) {
  std::vector<Slot> pt;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    pt.push_back(2 * raw.route_length(i) + raw_asg.waits.at(i));
  }
  return pt;
}

RoutedNetwork star_network(const RawStarInstance& raw) {
  RoutedNetwork net;
  const std::size_t n = raw.size();
  const auto cs = net.add_vertex("c_s");
  const auto ct = net.add_vertex("c_t");
  net.add_arc(cs, ct, raw.central_weight);
  net.add_arc(ct, cs, raw.central_weight);
  std::vector<RoutedNetwork::Vertex> s(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = net.add_vertex("s_" + std::to_string(i));
    t[i] = net.add_vertex("t_" + std::to_string(i));
    net.add_arc(s[i], cs, raw.source_weights[i]);
    net.add_arc(cs, s[i], raw.source_weights[i]);
    net.add_arc(ct, t[i], raw.tail_weights[i]);
    net.add_arc(t[i], ct, raw.tail_weights[i]);
  }
  for (std::size_t i = 0; i < n; ++i) net.add_route({s[i], cs, ct, t[i]});
  for (std::size_t i = 0; i < n; ++i) net.add_route({t[i], ct, cs, s[i]});
  return net;
}

std::vector<Violation> validate_raw(const RawStarInstance& raw,
                                    const Assignment& raw_asg) {
  raw.check();
  const std::size_t n = raw.size();
  std::vector<Violation> out;
  if (raw_asg.offsets.size() != n || raw_asg.waits.size() != n) {
    out.push_back({ViolationKind::kMalformed, 0, 0,
                   "assignment size does not match the instance"});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (raw_asg.waits[i] < 0) {
      out.push_back({ViolationKind::kMalformed, i, i, "negative waiting time"});
      return out;
    }
  }
  const RoutedNetwork net = star_network(raw);
  std::vector<Slot> offsets(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    offsets[i] = raw_asg.offsets[i];
    // The answer leaves t_i once the message arrived and waited.
    offsets[n + i] =
        raw_asg.offsets[i] + raw.route_length(i) + raw_asg.waits[i];
  }
  for (const ArcCollision& c :
       validate_pra(net, offsets, raw.period, raw.tau)) {
    const bool backward = c.first_route >= n;
    std::ostringstream os;
    os << "routes collide on arc " << net.name(c.from) << "->"
       << net.name(c.to);
    out.push_back({backward ? ViolationKind::kBackwardCollision
                            : ViolationKind::kForwardCollision,
                   c.first_route % n, c.second_route % n, os.str()});
  }
  const auto pt = raw_process_times(raw, raw_asg);
  for (std::size_t i = 0; i < n; ++i) {
    if (pt[i] > raw.deadlines[i]) {
      std::ostringstream os;
      os << "route " << i << " process time " << pt[i] << " > "
         << raw.deadlines[i];
      out.push_back({ViolationKind::kDeadline, i, i, os.str()});
    }
  }
  return out;
}

}  // namespace periodic
