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

#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>

#include "history_csv.hpp"

namespace rpgmres::bench {

namespace {

using PK = PrecondKind::Kind;

SolveConfig base_config(const ProblemSpec& p, bool reorth) {
  SolveConfig c;
  c.reorthogonalize = reorth;
  c.max_iter = kTestMatrixSize;
  // Run the whole iteration range (until breakdown or max_iter) so each CSV
  // shows the full curve including any late divergence.
  c.stop_tol = 0.0;
  c.stop_metric = p.rhs.kind == RhsMode::Kind::Inconsistent ? StopMetric::AtRelRes
                                                              : StopMetric::RelRes;
  c.record_hessenberg_spectrum = true;
  return c;
}

std::string alpha_tag(double alpha) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.0e", alpha);
  std::string s = buf;
  // 1e-08 -> 1e-8
  const auto pos = s.find("e-0");
  if (pos != std::string::npos) s.erase(pos + 2, 1);
  return s;
}

CurveSpec curve(std::string name, const ProblemSpec& p, MethodKind m, PK pk, bool reorth) {
  return {std::move(name), p, m, pk, base_config(p, reorth)};
}

// GMRES baseline plus AB-GMRES for both preconditioners at each threshold
// and without the pseudoinverse.
void add_threshold_family(SuiteSpec& s, const ProblemSpec& p, bool reorth,
                          const std::vector<double>& alphas) {
  const std::string suffix = reorth ? "-reorth" : "";
  s.curves.push_back(curve("gmres" + suffix, p, MethodKind::Gmres, PK::None, reorth));
  for (const auto& [tag, pk] : {std::pair{"at", PK::At}, std::pair{"cat", PK::CAt}}) {
    for (double a : alphas) {
      CurveSpec c = curve(std::string("ab-") + tag + suffix + "-pinv" + alpha_tag(a), p,
                          MethodKind::AbGmres, pk, reorth);
      c.config.strategy = HessSolveStrategy::pinv(PinvPolicy::relative_to_sigma1(a));
      s.curves.push_back(std::move(c));
    }
    s.curves.push_back(curve(std::string("ab-") + tag + suffix + "-nopinv", p,
                             MethodKind::AbGmres, pk, reorth));
  }
}

void add_plain_family(SuiteSpec& s, const ProblemSpec& p, bool reorth) {
  const std::string suffix = reorth ? "-reorth" : "";
  s.curves.push_back(curve("gmres" + suffix, p, MethodKind::Gmres, PK::None, reorth));
  s.curves.push_back(curve("ab-at" + suffix, p, MethodKind::AbGmres, PK::At, reorth));
  s.curves.push_back(curve("ab-cat" + suffix, p, MethodKind::AbGmres, PK::CAt, reorth));
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gp-inconsistent", "gp-consistent",
                                                 "index2-inconsistent", "index2-consistent",
                                                 "ba-comparison"};
  return names;
}

SuiteSpec make_suite(const std::string& name, std::uint64_t seed) {
  const ProblemSpec gp_inc{ProblemFamily::Gp, GpParams::gp_default(),
                           RhsMode::inconsistent(0.01, seed)};
  const ProblemSpec gp_con{ProblemFamily::Gp, GpParams::gp_default(), RhsMode::consistent()};
  const ProblemSpec i2_inc{ProblemFamily::Index2, GpParams::index2_default(),
                           RhsMode::inconsistent(0.01, seed)};
  const ProblemSpec i2_con{ProblemFamily::Index2, GpParams::index2_default(),
                           RhsMode::consistent()};

  SuiteSpec s{name, {}};
  if (name == "gp-inconsistent") {
    add_threshold_family(s, gp_inc, true, {1e-11, 1e-8});
  } else if (name == "gp-consistent") {
    add_plain_family(s, gp_con, true);
  } else if (name == "index2-inconsistent") {
    add_threshold_family(s, i2_inc, false, {1e-10, 1e-8});
  } else if (name == "index2-consistent") {
    add_plain_family(s, i2_con, false);
  } else if (name == "ba-comparison") {
    for (const auto& [tag, p] : {std::pair{"inconsistent", gp_inc}, std::pair{"consistent", gp_con}}) {
      const std::string t = tag;
      s.curves.push_back(curve("ba-at-reorth-" + t, p, MethodKind::BaGmres, PK::At, true));
      s.curves.push_back(curve("ba-cat-reorth-" + t, p, MethodKind::BaGmres, PK::CAt, true));
      const bool inc = p.rhs.kind == RhsMode::Kind::Inconsistent;
      for (const auto& [ptag, pk] : {std::pair{"at", PK::At}, std::pair{"cat", PK::CAt}}) {
        CurveSpec c = curve(std::string("ab-") + ptag + "-reorth" + (inc ? "-pinv1e-8-" : "-") + t,
                            p, MethodKind::AbGmres, pk, true);
        if (inc) c.config.strategy = HessSolveStrategy::pinv(PinvPolicy::relative_to_sigma1(1e-8));
        s.curves.push_back(std::move(c));
      }
    }
  } else {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown suite '" + name + "' (expected one of: " + known + ")");
  }
  return s;
}

ConvergenceHistory run_curve(const CurveSpec& c) {
  const ProblemInstance p = make_problem(c.problem.family, c.problem.params, c.problem.rhs);
  PrecondKind pk;
  switch (c.precond) {
    case PK::None: pk = PrecondKind::none(); break;
    case PK::At: pk = PrecondKind::at(); break;
    case PK::CAt: pk = PrecondKind::cat(build_jacobi_spd(p.a)); break;
  }
  return solve_system(c.method, p.a, pk, p.b, c.config);
}

std::vector<CurveResult> run_suite(const SuiteSpec& suite, unsigned jobs) {
  jobs = std::max(1u, jobs);
  std::vector<CurveResult> results(suite.curves.size());
  auto work = [&suite, &results](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    results[i].spec = suite.curves[i];
    results[i].history = run_curve(suite.curves[i]);
    results[i].seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  for (std::size_t start = 0; start < results.size(); start += jobs) {
    const std::size_t end = std::min(results.size(), start + jobs);
    std::vector<std::future<void>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, work, i));
    }
    for (auto& f : batch) f.get();
  }
  return results;
}

CurveSummary summarize(const CurveResult& r) {
  CurveSummary s;
  s.name = r.spec.name;
  s.metric = r.spec.config.stop_metric;
  s.iterations = r.history.iterations();
  s.termination = r.history.termination;
  s.min_value = r.history.min_metric(s.metric);
  for (const auto& rec : r.history.records) {
    const double v = s.metric == StopMetric::RelRes ? rec.rel_res : rec.at_rel_res;
    if (v == s.min_value) {
      s.min_iter = rec.iter;
      break;
    }
  }
  if (!r.history.records.empty()) {
    const auto& last = r.history.records.back();
    s.final_value = s.metric == StopMetric::RelRes ? last.rel_res : last.at_rel_res;
  }
  return s;
}

const CurveResult& find_curve(const std::vector<CurveResult>& results, const std::string& name) {
  for (const auto& r : results) {
    if (r.spec.name == name) return r;
  }
  throw std::out_of_range("no curve named '" + name + "'");
}

std::vector<std::filesystem::path> write_suite_outputs(const SuiteSpec& suite,
                                                       const std::vector<CurveResult>& results,
                                                       const std::filesystem::path& outdir,
                                                       io::RunManifest manifest) {
  std::filesystem::create_directories(outdir);
  std::vector<std::filesystem::path> written;
  nlohmann::json curves = nlohmann::json::array();
  for (const auto& r : results) {
    const auto path = outdir / (r.spec.name + ".csv");
    io::write_history_csv(path, r.history.records);
    written.push_back(path);
    curves.push_back({{"name", r.spec.name},
                      {"file", path.filename().string()},
                      {"family", to_string(r.spec.problem.family)},
                      {"params", io::to_json(r.spec.problem.params)},
                      {"rhs", io::to_json(r.spec.problem.rhs)},
                      {"method", to_string(r.spec.method)},
                      {"b_kind", PrecondKind{r.spec.precond, {}}.describe()},
                      {"config", io::to_json(r.spec.config)}});
  }

  const auto summary_path = outdir / "summary.csv";
  {
    std::ofstream f(summary_path);
    if (!f) throw std::runtime_error("cannot open '" + summary_path.string() + "' for writing");
    f << "curve,metric,min_value,min_iter,final_value,iterations,termination\n";
    for (const auto& r : results) {
      const CurveSummary s = summarize(r);
      char line[256];
      std::snprintf(line, sizeof line, "%s,%s,%.16e,%zu,%.16e,%zu,%s\n", s.name.c_str(),
                    s.metric == StopMetric::RelRes ? "rel_res" : "at_rel_res", s.min_value,
                    s.min_iter, s.final_value, s.iterations, to_string(s.termination).c_str());
      f << line;
    }
  }
  written.push_back(summary_path);

  const auto manifest_path = outdir / "manifest.json";
  for (const auto& p : written) manifest.outputs.push_back(p.string());
  manifest.generator = {{"suite", suite.name}};
  manifest.config = {{"curves", curves}};
  io::write_manifest(manifest_path, manifest);
  written.push_back(manifest_path);
  return written;
}

}  // namespace rpgmres::bench
