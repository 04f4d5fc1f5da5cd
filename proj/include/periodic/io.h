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

#ifndef PERIODIC_IO_H_
#define PERIODIC_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"

#include "periodic/model.h"

namespace periodic {

// Raw instances: {"n", "P", "tau", "a": [], "c", "b": [], "d": []}.
// Assignments: {"m": [], "w": []}.
nlohmann::json to_json(const RawStarInstance& raw);
nlohmann::json to_json(const Assignment& asg);
RawStarInstance raw_instance_from_json(const nlohmann::json& j);
Assignment assignment_from_json(const nlohmann::json& j);

// File helpers. Errors are std::runtime_error naming the file and, for
// syntax errors, the line and column.
RawStarInstance read_instance(const std::filesystem::path& path);
Assignment read_assignment(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace periodic

#endif  // PERIODIC_IO_H_
