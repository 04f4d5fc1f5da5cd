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

#include "periodic/io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace periodic {

using nlohmann::json;

json to_json(const RawStarInstance& raw) {
  return json{{"n", raw.size()},
              {"P", raw.period},
              {"tau", raw.tau},
              {"a", raw.source_weights},
              {"c", raw.central_weight},
              {"b", raw.tail_weights},
              {"d", raw.deadlines}};
}

json to_json(const Assignment& asg) {
  return json{{"m", asg.offsets}, {"w", asg.waits}};
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw std::runtime_error("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::runtime_error(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::type_error&) {
    throw std::runtime_error(std::string("field \"") + key +
                             "\" has the wrong type");
  }
}

}  // namespace

RawStarInstance raw_instance_from_json(const json& j) {
  RawStarInstance raw;
  const auto n = get<std::size_t>(j, "n");
  raw.period = get<Slot>(j, "P");
  raw.tau = get<Slot>(j, "tau");
  raw.source_weights = get<std::vector<Slot>>(j, "a");
  raw.central_weight = get<Slot>(j, "c");
  raw.tail_weights = get<std::vector<Slot>>(j, "b");
  raw.deadlines = get<std::vector<Slot>>(j, "d");
  if (raw.size() != n) {
    throw std::runtime_error("\"n\" is " + std::to_string(n) + " but \"b\" has " +
                             std::to_string(raw.size()) + " entries");
  }
  raw.check();
  return raw;
}

Assignment assignment_from_json(const json& j) {
  Assignment asg{get<std::vector<Slot>>(j, "m"), get<std::vector<Slot>>(j, "w")};
  if (asg.offsets.size() != asg.waits.size()) {
    throw std::runtime_error("\"m\" and \"w\" differ in length");
  }
  return asg;
}

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

template <typename F>
auto decode(const std::filesystem::path& path, F&& f) {
  const json j = read_json(path);
  try {
    return f(j);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace

RawStarInstance read_instance(const std::filesystem::path& path) {
  return decode(path, raw_instance_from_json);
}

Assignment read_assignment(const std::filesystem::path& path) {
  return decode(path, assignment_from_json);
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << j.dump() << '\n';
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace periodic
