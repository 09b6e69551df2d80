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

#include "powergame/app/output.h"

#include <openssl/evp.h>

#include <fstream>

#include "powergame/format.h"

#ifndef POWERGAME_VERSION
#define POWERGAME_VERSION "0.0.0"
#endif

namespace powergame::app {

std::string ToolVersion() { return POWERGAME_VERSION; }

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int k = 0; k < length; ++k) {
    out += kHex[digest[k] >> 4];
    out += kHex[digest[k] & 15];
  }
  return out;
}

nlohmann::json Metadata(const ExperimentConfig& config) {
  nlohmann::json seeds = {{"learning", config.learning.seed}};
  if (!config.channel.is_fixed()) seeds["channel"] = config.channel.seed;
  return {{"tool", "powergame"},
          {"version", ToolVersion()},
          {"config_hash", config.Hash()},
          {"seeds", seeds}};
}

std::filesystem::path WriteTextFile(const std::filesystem::path& dir,
                                    const std::string& name,
                                    const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("failed to write " + path.string());
  return path;
}

std::string PointsCsv(const std::vector<Point2>& points) {
  std::string csv = "u1,u2\n";
  for (const Point2& p : points) {
    csv += FormatNumber(p[0]) + "," + FormatNumber(p[1]) + "\n";
  }
  return csv;
}

nlohmann::json DeviceJson(const CommDevice& device) {
  nlohmann::json map = nlohmann::json::object();
  for (std::size_t t = 0; t < device.conditionals.size(); ++t) {
    map[device.space.Key(static_cast<std::int64_t>(t))] =
        device.conditionals[t].probs;
  }
  return map;
}

std::string DumpJson(const nlohmann::json& value) {
  return value.dump(2) + "\n";
}

}  // namespace powergame::app
