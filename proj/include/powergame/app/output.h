// Copyright 2026 The powergame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POWERGAME_APP_OUTPUT_H_
#define POWERGAME_APP_OUTPUT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "powergame/app/config.h"
#include "powergame/communication.h"
#include "powergame/geometry.h"

namespace powergame::app {

// Set from the CMake project version.
std::string ToolVersion();

std::string Sha256Hex(std::string_view data);

// {"tool", "version", "config_hash", "seeds"}; deliberately free of
// timestamps and host details so reruns are byte-identical.
nlohmann::json Metadata(const ExperimentConfig& config);

// Writes `content` to `dir / name`, creating `dir` if needed, and returns
// the path written.
std::filesystem::path WriteTextFile(const std::filesystem::path& dir,
                                    const std::string& name,
                                    const std::string& content);

// Header `u1,u2`, one point per line.
std::string PointsCsv(const std::vector<Point2>& points);

// Joint-type key -> recommendation probabilities in profile order.
nlohmann::json DeviceJson(const CommDevice& device);

// Pretty-printed JSON with a trailing newline.
std::string DumpJson(const nlohmann::json& value);

}  // namespace powergame::app

#endif  // POWERGAME_APP_OUTPUT_H_
