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
#include <string>
#include <vector>

#include "manifest.hpp"
#include "rpgmres/krylov.hpp"
#include "rpgmres/precond.hpp"
#include "rpgmres/problems.hpp"

namespace rpgmres::bench {

struct ProblemSpec {
  ProblemFamily family = ProblemFamily::Gp;
  GpParams params;
  RhsMode rhs;
};

struct CurveSpec {
  std::string name;
  ProblemSpec problem;
  MethodKind method = MethodKind::Gmres;
  PrecondKind::Kind precond = PrecondKind::Kind::None;
  SolveConfig config;
};

struct SuiteSpec {
  std::string name;
  std::vector<CurveSpec> curves;
};

/// gp-inconsistent, gp-consistent, index2-inconsistent, index2-consistent,
/// ba-comparison.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name. `seed` drives the noise
/// of inconsistent right-hand sides.
SuiteSpec make_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

struct CurveResult {
  CurveSpec spec;
  ConvergenceHistory history;
  double seconds = 0.0;
};

ConvergenceHistory run_curve(const CurveSpec& curve);

/// Runs the curves on up to `jobs` threads; results keep the suite order.
std::vector<CurveResult> run_suite(const SuiteSpec& suite, unsigned jobs = 1);

struct CurveSummary {
  std::string name;
  StopMetric metric = StopMetric::RelRes;
  double min_value = 0.0;
  std::size_t min_iter = 0;
  double final_value = 0.0;
  std::size_t iterations = 0;
  Termination termination = Termination::MaxIter;
};

CurveSummary summarize(const CurveResult& result);

const CurveResult& find_curve(const std::vector<CurveResult>& results, const std::string& name);

/// Writes <outdir>/<curve>.csv per curve, summary.csv and manifest.json.
/// Returns the written paths.
std::vector<std::filesystem::path> write_suite_outputs(const SuiteSpec& suite,
                                                       const std::vector<CurveResult>& results,
                                                       const std::filesystem::path& outdir,
                                                       io::RunManifest manifest);

}  // namespace rpgmres::bench
