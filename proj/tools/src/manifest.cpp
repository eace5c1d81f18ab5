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

#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace rpgmres::io {

namespace {

const char* to_cstr(StopMetric m) { return m == StopMetric::RelRes ? "rel_res" : "at_rel_res"; }

}  // namespace

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["argv"] = argv;
  j["config"] = config;
  j["generator"] = generator;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["timestamp"] = timestamp;
  j["outputs"] = outputs;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest.json";
  return p;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << manifest.to_json().dump(2) << '\n';
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

nlohmann::json to_json(const SolveConfig& c) {
  nlohmann::json j;
  j["hsolve"] = c.strategy.describe();
  j["reorthogonalize"] = c.reorthogonalize;
  j["max_iter"] = c.max_iter;
  j["breakdown_tol"] = c.breakdown_tol;
  j["stop_metric"] = to_cstr(c.stop_metric);
  j["stop_tol"] = c.stop_tol;
  j["record_hessenberg_spectrum"] = c.record_hessenberg_spectrum;
  return j;
}

nlohmann::json to_json(const GpParams& p) { return {{"rho", p.rho}, {"gamma", p.gamma}}; }

nlohmann::json to_json(const RhsMode& m) {
  if (m.kind == RhsMode::Kind::Consistent) return {{"mode", "consistent"}};
  return {{"mode", "inconsistent"}, {"noise", m.noise_scale}, {"seed", m.seed}};
}

}  // namespace rpgmres::io
