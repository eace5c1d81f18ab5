// Copyright 2026 The rpgmres Authors
//
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rpgmres/krylov.hpp"
#include "rpgmres/problems.hpp"

namespace rpgmres::io {

/// Everything needed to regenerate a set of output files.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json generator = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string timestamp;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// <output>.manifest.json next to the output file.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

nlohmann::json to_json(const SolveConfig& config);
nlohmann::json to_json(const GpParams& params);
nlohmann::json to_json(const RhsMode& mode);

}  // namespace rpgmres::io
