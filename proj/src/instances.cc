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

#include "periodic/instances.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "periodic/rng.h"

namespace periodic {
namespace {

std::int64_t parse_int(const std::string& text) {
  std::size_t used = 0;
  const long long v = std::stoll(text, &used);
  if (used != text.size()) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

Rational reduced(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{num, den} : Rational{num / g, den / g};
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto num = parse_int(text.substr(0, slash));
    const auto den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("bad denominator in " + text);
    return reduced(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("too many decimals");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    return reduced(w * den + f, den);
  }
  return {parse_int(text), 1};
}

Slot period_for_load(std::size_t n, Slot tau, Rational load) {
  if (load.num <= 0 || load.den <= 0 || load.num > load.den) {
    throw std::invalid_argument("load must lie in (0, 1]");
  }
  using Wide = __int128;
  const Wide work = static_cast<Wide>(n) * tau;
  // Exact period would be work * den / num.
  const Wide lo = work * load.den / load.num;
  const Wide hi = (work * load.den + load.num - 1) / load.num;
  auto distance = [&](Wide p) {
    // |work/p - num/den| scaled by den * p (the common denominator).
    const Wide diff = work * load.den - static_cast<Wide>(load.num) * p;
    return std::pair<Wide, Wide>{diff < 0 ? -diff : diff, load.den * p};
  };
  Wide best = std::max(hi, work);
  if (lo >= work && lo != best) {
    const auto [dl, sl] = distance(lo);
    const auto [db, sb] = distance(best);
    if (dl * sb < db * sl) best = lo;
  }
  return static_cast<Slot>(best);
}

PeriodExpr PeriodExpr::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty weight expression");
  const auto p = text.find('P');
  if (p == std::string::npos) return {parse_int(text), {0, 1}};
  std::int64_t coeff = 1;
  std::int64_t den = 1;
  if (p > 0) coeff = parse_int(text.substr(0, p));
  const std::string rest = text.substr(p + 1);
  if (!rest.empty()) {
    if (rest[0] != '/') throw std::invalid_argument("bad expression " + text);
    den = parse_int(rest.substr(1));
    if (den <= 0) throw std::invalid_argument("bad expression " + text);
  }
  return {0, reduced(coeff, den)};
}

Slot PeriodExpr::eval(Slot period) const {
  return constant + period * fraction.num / fraction.den;
}

WeightModel WeightModel::uniform(Slot low, Slot high) {
  WeightModel m;
  m.kind = Kind::kUniform;
  m.low = low;
  m.high = high;
  return m;
}

WeightModel WeightModel::band(PeriodExpr center, Slot halfwidth) {
  WeightModel m;
  m.kind = Kind::kBand;
  m.center = center;
  m.halfwidth = halfwidth;
  return m;
}

WeightModel WeightModel::two_band(PeriodExpr first, PeriodExpr second,
                                  Slot halfwidth) {
  WeightModel m;
  m.kind = Kind::kTwoBand;
  m.center = first;
  m.second_center = second;
  m.halfwidth = halfwidth;
  return m;
}

WeightModel WeightModel::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3 && parts[0] == "uniform") {
    return uniform(parse_int(parts[1]), parse_int(parts[2]));
  }
  if (parts.size() == 3 && parts[0] == "band") {
    return band(PeriodExpr::parse(parts[1]), parse_int(parts[2]));
  }
  if (parts.size() == 4 && parts[0] == "twoband") {
    return two_band(PeriodExpr::parse(parts[1]), PeriodExpr::parse(parts[2]),
                    parse_int(parts[3]));
  }
  throw std::invalid_argument("unknown weight model '" + text +
                              "' (uniform:LO:HI, band:C:I, twoband:C1:C2:I)");
}

namespace {

std::string expr_string(const PeriodExpr& e) {
  if (e.fraction.num == 0) return std::to_string(e.constant);
  std::string s = e.fraction.num == 1 ? "P" : std::to_string(e.fraction.num) + "P";
  if (e.fraction.den != 1) s += "/" + std::to_string(e.fraction.den);
  return s;
}

}  // namespace

std::string WeightModel::to_string() const {
  switch (kind) {
    case Kind::kUniform:
      return "uniform:" + std::to_string(low) + ":" + std::to_string(high);
    case Kind::kBand:
      return "band:" + expr_string(center) + ":" + std::to_string(halfwidth);
    case Kind::kTwoBand:
      return "twoband:" + expr_string(center) + ":" +
             expr_string(second_center) + ":" + std::to_string(halfwidth);
  }
  return "?";
}

void GenSpec::check() const {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (load.num <= 0 || load.den <= 0 || load.num > load.den) {
    throw std::invalid_argument("load must lie in (0, 1]");
  }
  if (weights.kind == WeightModel::Kind::kUniform &&
      (weights.low < 0 || weights.high < weights.low)) {
    throw std::invalid_argument("uniform weights need 0 <= LO <= HI");
  }
  if (weights.halfwidth < 0) throw std::invalid_argument("halfwidth < 0");
  if (margin < 0) throw std::invalid_argument("margin must be >= 0");
}

RawStarInstance generate(const GenSpec& spec) {
  spec.check();
  RawStarInstance raw;
  raw.tau = spec.tau;
  raw.period = period_for_load(spec.n, spec.tau, spec.load);
  raw.central_weight = 0;
  SplitMix64 rng(spec.seed);
  const WeightModel& w = spec.weights;
  auto draw = [&](std::size_t route) -> Slot {
    switch (w.kind) {
      case WeightModel::Kind::kUniform:
        return rng.uniform(w.low, w.high);
      case WeightModel::Kind::kBand:
      case WeightModel::Kind::kTwoBand: {
        const bool first_group = w.kind == WeightModel::Kind::kBand ||
                                 route < (spec.n + 1) / 2;
        const Slot c = (first_group ? w.center : w.second_center)
                           .eval(raw.period);
        return std::max<Slot>(0, rng.uniform(c - w.halfwidth, c + w.halfwidth));
      }
    }
    return 0;
  };
  for (std::size_t i = 0; i < spec.n; ++i) {
    raw.source_weights.push_back(spec.tail_only ? 0 : draw(i));
    raw.tail_weights.push_back(draw(i));
  }
  return with_margin(std::move(raw), spec.margin);
}

RawStarInstance with_margin(RawStarInstance raw, Slot margin) {
  raw.deadlines.assign(raw.size(), 0);
  const Slot d = 2 * raw.longest_route() + margin;
  std::fill(raw.deadlines.begin(), raw.deadlines.end(), d);
  return raw;
}

Figure1 figure1_network() {
  Figure1 fig;
  RoutedNetwork& net = fig.network;
  std::map<std::string, RoutedNetwork::Vertex> v;
  for (const char* name :
       {"s_0", "s_1", "s_2", "A", "B", "C", "D", "E", "F", "t_0", "t_1", "t_2"}) {
    v[name] = net.add_vertex(name);
  }
  auto arc = [&](const char* from, const char* to, Slot w) {
    net.add_arc(v[from], v[to], w);
  };
  // r_1
  arc("s_1", "A", 2);
  arc("A", "B", 1);
  arc("B", "C", 2);
  arc("C", "D", 1);
  arc("D", "t_1", 1);
  // r_2
  arc("s_2", "E", 2);
  arc("E", "F", 1);
  arc("F", "C", 1);
  arc("D", "t_2", 1);
  // r_0
  arc("s_0", "A", 1);
  arc("B", "E", 1);
  arc("F", "t_0", 1);

  net.add_route({v["s_0"], v["A"], v["B"], v["E"], v["F"], v["t_0"]});
  net.add_route({v["s_1"], v["A"], v["B"], v["C"], v["D"], v["t_1"]});
  net.add_route({v["s_2"], v["E"], v["F"], v["C"], v["D"], v["t_2"]});
  fig.offsets = {0, 0, 0};
  return fig;
}

}  // namespace periodic
