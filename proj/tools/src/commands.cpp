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

#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "bench.hpp"
#include "history_csv.hpp"
#include "manifest.hpp"
#include "mmio.hpp"
#include "rpgmres/analysis.hpp"
#include "rpgmres/errors.hpp"
#include "rpgmres/linalg.hpp"
#include "rpgmres/precond.hpp"
#include "rpgmres/problems.hpp"

namespace rpgmres::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

io::RunManifest manifest_for(const std::string& command, const std::vector<std::string>& argv) {
  io::RunManifest m;
  m.command = command;
  m.argv = argv;
  m.timestamp = io::utc_timestamp();
  return m;
}

void write_with_manifest(const std::string& out_path, io::RunManifest m) {
  m.outputs.push_back(out_path);
  io::write_manifest(io::manifest_path_for(out_path), m);
}

PinvPolicy parse_pinv_alpha(const std::string& s) {
  if (s == "none") return PinvPolicy::no_truncation();
  if (s == "default") return PinvPolicy::default_numerical_rank();
  double alpha = 0.0;
  try {
    std::size_t used = 0;
    alpha = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw UsageError("--pinv-alpha expects a number in (0,1), 'none' or 'default', got '" + s +
                     "'");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--pinv-alpha must lie in (0,1)");
  return PinvPolicy::relative_to_sigma1(alpha);
}

struct GenOpts {
  std::string family;
  std::optional<double> rho;
  std::optional<double> gamma;
  std::string out;
};

int cmd_gen(const GenOpts& o, const std::vector<std::string>& argv, std::ostream& out) {
  const ProblemFamily family = parse_family(o.family);
  GpParams p = family == ProblemFamily::Gp ? GpParams::gp_default() : GpParams::index2_default();
  if (o.rho) p.rho = *o.rho;
  if (o.gamma) p.gamma = *o.gamma;
  p.validate();
  const DenseMatrix a =
      family == ProblemFamily::Gp ? gen_gp_matrix(p) : gen_index2_matrix(p);
  char comment[128];
  std::snprintf(comment, sizeof comment, "family=%s rho=%.17g gamma=%.17g",
                to_string(family).c_str(), p.rho, p.gamma);
  io::write_matrix_market(o.out, a, comment);
  auto m = manifest_for("gen", argv);
  m.generator = io::to_json(p);
  m.generator["family"] = to_string(family);
  m.generator["a12_embedding"] = "top-left 32x32 of the 64x64 block";
  write_with_manifest(o.out, m);
  out << "wrote " << o.out << " (" << a.rows() << "x" << a.cols() << ", nnz "
      << a.count_nonzeros() << ")\n";
  return kOk;
}

struct RhsOpts {
  std::string matrix;
  std::string mode = "consistent";
  double noise = 0.01;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

int cmd_rhs(const RhsOpts& o, const std::vector<std::string>& argv, std::ostream& out) {
  const DenseMatrix a = io::read_matrix_market(std::filesystem::path(o.matrix));
  RhsMode mode;
  if (o.mode == "consistent") {
    mode = RhsMode::consistent();
  } else if (o.mode == "inconsistent") {
    if (!(o.noise > 0.0)) throw UsageError("--noise must be positive");
    mode = RhsMode::inconsistent(o.noise, o.seed);
  } else {
    throw UsageError("--mode must be consistent or inconsistent");
  }
  const DenseVector b = gen_rhs(a, mode);
  io::write_vector_market(o.out, b, "rhs " + mode.describe());
  auto m = manifest_for("rhs", argv);
  m.generator = io::to_json(mode);
  m.generator["matrix"] = o.matrix;
  if (mode.kind == RhsMode::Kind::Inconsistent) m.seed = mode.seed;
  write_with_manifest(o.out, m);
  out << "wrote " << o.out << " (" << b.size() << " entries, " << mode.describe() << ")\n";
  return kOk;
}

struct SolveOpts {
  std::string matrix;
  std::string rhs;
  std::string method = "ab-gmres";
  std::optional<std::string> b_kind;
  bool reorth = false;
  std::string hsolve = "givens";
  std::optional<std::string> pinv_alpha;
  std::optional<std::size_t> maxit;
  std::string stop_metric = "at-rel-res";
  double stop_tol = 1e-10;
  double breakdown_tol = 1e-15;
  bool record_spectrum = false;
  std::string history;
  std::string x_out;
};

int cmd_solve(const SolveOpts& o, const std::vector<std::string>& argv, std::ostream& out) {
  MethodKind method;
  if (o.method == "gmres") {
    method = MethodKind::Gmres;
  } else if (o.method == "ab-gmres") {
    method = MethodKind::AbGmres;
  } else if (o.method == "ba-gmres") {
    method = MethodKind::BaGmres;
  } else {
    throw UsageError("--method must be gmres, ab-gmres or ba-gmres");
  }
  if (method == MethodKind::Gmres && o.b_kind) {
    throw UsageError("--b-kind applies only to ab-gmres and ba-gmres");
  }
  const std::string b_kind = o.b_kind.value_or("at");
  if (b_kind != "at" && b_kind != "cat") throw UsageError("--b-kind must be at or cat");

  SolveConfig config;
  if (o.hsolve == "pinv") {
    if (!o.pinv_alpha) throw UsageError("--hsolve pinv requires --pinv-alpha");
    config.strategy = HessSolveStrategy::pinv(parse_pinv_alpha(*o.pinv_alpha));
  } else if (o.hsolve == "givens") {
    if (o.pinv_alpha) throw UsageError("--pinv-alpha requires --hsolve pinv");
  } else {
    throw UsageError("--hsolve must be givens or pinv");
  }
  if (o.stop_metric == "rel-res") {
    config.stop_metric = StopMetric::RelRes;
  } else if (o.stop_metric == "at-rel-res") {
    config.stop_metric = StopMetric::AtRelRes;
  } else {
    throw UsageError("--stop-metric must be rel-res or at-rel-res");
  }
  config.reorthogonalize = o.reorth;
  config.stop_tol = o.stop_tol;
  config.breakdown_tol = o.breakdown_tol;
  config.record_hessenberg_spectrum = o.record_spectrum;

  const DenseMatrix a = io::read_matrix_market(std::filesystem::path(o.matrix));
  const DenseVector b = io::read_vector_market(std::filesystem::path(o.rhs));
  if (!a.is_square()) throw UsageError("matrix must be square");
  if (b.size() != a.rows()) {
    throw UsageError("rhs has " + std::to_string(b.size()) + " entries but the matrix is " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  config.max_iter = o.maxit.value_or(a.rows());
  if (config.max_iter == 0) throw UsageError("--maxit must be >= 1");

  PrecondKind pk = PrecondKind::none();
  if (method != MethodKind::Gmres) {
    pk = b_kind == "cat" ? PrecondKind::cat(build_jacobi_spd(a)) : PrecondKind::at();
  }
  const ConvergenceHistory h = solve_system(method, a, pk, b, config);
  io::write_history_csv(std::filesystem::path(o.history), h.records);

  auto m = manifest_for("solve", argv);
  m.config = io::to_json(config);
  m.config["method"] = to_string(method);
  m.config["b_kind"] = pk.describe();
  m.generator = {{"matrix", o.matrix}, {"rhs", o.rhs}};
  write_with_manifest(o.history, m);
  if (!o.x_out.empty()) {
    io::write_vector_market(o.x_out, h.final_x, "solution from " + to_string(method));
    write_with_manifest(o.x_out, m);
  }

  const ResidualReport r = residual_metrics(a, b, h.final_x);
  out << "termination=" << to_string(h.termination) << "\n"
      << "iterations=" << h.iterations() << "\n"
      << "rel_res=" << sci(r.rel_res) << "\n"
      << "at_rel_res=" << sci(r.at_rel_res) << "\n"
      << "min_rel_res=" << sci(h.min_rel_res()) << "\n"
      << "min_at_rel_res=" << sci(h.min_at_rel_res()) << "\n";
  if (r.degenerate || h.degenerate_denominator) {
    out << "note=a residual denominator vanished; the ratio is reported as 0\n";
  }
  return kOk;
}

int cmd_classify(const std::string& path, std::optional<double> tol, std::ostream& out) {
  const DenseMatrix a = io::read_matrix_market(std::filesystem::path(path));
  if (!a.is_square()) throw UsageError("matrix must be square");
  const MatrixClassification c = tol ? classify(a, *tol) : classify(a);
  out << "n=" << a.rows() << "\n"
      << "rank=" << c.rank << "\n"
      << "index=" << c.index << "\n"
      << "is_ep=" << (c.is_ep ? "true" : "false") << "\n"
      << "sigma_max=" << sci(c.sigma_max) << "\n"
      << "sigma_min_pos=" << sci(c.sigma_min_pos) << "\n"
      << "kappa=" << sci(c.kappa) << "\n"
      << "tol=" << sci(c.tol) << "\n";
  return kOk;
}

int cmd_spectrum(const std::string& path, const std::string& out_path,
                 const std::vector<std::string>& argv, std::ostream& out) {
  const DenseMatrix a = io::read_matrix_market(std::filesystem::path(path));
  const DenseVector s = singular_values(a);
  auto emit = [&s](std::ostream& os) {
    os << "i,sigma\n";
    char buf[48];
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.16e\n", i + 1, s[i]);
      os << buf;
    }
  };
  if (out_path.empty()) {
    emit(out);
    return kOk;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  emit(f);
  auto m = manifest_for("spectrum", argv);
  m.generator = {{"matrix", path}};
  write_with_manifest(out_path, m);
  out << "wrote " << out_path << " (" << s.size() << " singular values)\n";
  return kOk;
}

int cmd_bench(const std::string& suite_name, const std::string& outdir, unsigned jobs,
              std::uint64_t seed, const std::vector<std::string>& argv, std::ostream& out) {
  bench::SuiteSpec suite;
  try {
    suite = bench::make_suite(suite_name, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto results = bench::run_suite(suite, jobs);
  auto m = manifest_for("bench", argv);
  m.seed = seed;
  bench::write_suite_outputs(suite, results, outdir, m);

  char line[200];
  std::snprintf(line, sizeof line, "%-36s %-10s %-12s %5s %5s  %s\n", "curve", "metric", "min",
                "@iter", "iters", "termination");
  out << line;
  for (const auto& r : results) {
    const auto s = bench::summarize(r);
    std::snprintf(line, sizeof line, "%-36s %-10s %-12.4e %5zu %5zu  %s\n", s.name.c_str(),
                  s.metric == StopMetric::RelRes ? "rel_res" : "at_rel_res", s.min_value,
                  s.min_iter, s.iterations, to_string(s.termination).c_str());
    out << line;
  }
  out << "wrote " << results.size() << " curves to " << outdir << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Right-preconditioned GMRES for singular linear systems"};
  app.name(argv.empty() ? "rpgmres" : argv[0]);
  app.require_subcommand(1);

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a GP or index-2 test matrix");
  gen_cmd->add_option("--family", gen.family, "gp or index2")->required();
  gen_cmd->add_option("--rho", gen.rho, "alpha_16 = 10^-rho (default 12)");
  gen_cmd->add_option("--gamma", gen.gamma, "beta_32 = 10^-gamma (default 12 for gp, 15 for index2)");
  gen_cmd->add_option("--out", gen.out, "Output Matrix Market file")->required();

  RhsOpts rhs;
  auto* rhs_cmd = app.add_subcommand("rhs", "Generate a right-hand side for a matrix");
  rhs_cmd->add_option("--matrix", rhs.matrix, "Matrix Market file")->required();
  rhs_cmd->add_option("--mode", rhs.mode, "consistent or inconsistent")->capture_default_str();
  rhs_cmd->add_option("--noise", rhs.noise, "Noise norm for inconsistent mode")
      ->capture_default_str();
  rhs_cmd->add_option("--seed", rhs.seed, "Noise seed")->capture_default_str();
  rhs_cmd->add_option("--out", rhs.out, "Output Matrix Market file")->required();

  SolveOpts solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run a solver and write its history");
  solve_cmd->add_option("--matrix", solve.matrix, "Matrix Market file")->required();
  solve_cmd->add_option("--rhs", solve.rhs, "Right-hand side (Matrix Market array)")->required();
  solve_cmd->add_option("--method", solve.method, "gmres, ab-gmres or ba-gmres")
      ->capture_default_str();
  solve_cmd->add_option("--b-kind", solve.b_kind, "Preconditioner: at or cat (default at)");
  solve_cmd->add_flag("--reorth", solve.reorth, "Reorthogonalize the Arnoldi basis");
  solve_cmd->add_option("--hsolve", solve.hsolve, "givens or pinv")->capture_default_str();
  solve_cmd->add_option("--pinv-alpha", solve.pinv_alpha,
                        "Threshold factor alpha in (0,1), 'none' or 'default'");
  solve_cmd->add_option("--maxit", solve.maxit, "Iteration limit (default n)");
  solve_cmd->add_option("--stop-metric", solve.stop_metric, "rel-res or at-rel-res")
      ->capture_default_str();
  solve_cmd->add_option("--stop-tol", solve.stop_tol, "Stopping tolerance")->capture_default_str();
  solve_cmd->add_option("--breakdown-tol", solve.breakdown_tol,
                        "Breakdown when h <= tol * max(1, ||A||_F)")
      ->capture_default_str();
  solve_cmd->add_flag("--record-spectrum", solve.record_spectrum,
                      "Record sigma_max and sigma_min of H each iteration");
  solve_cmd->add_option("--history", solve.history, "Output CSV")->required();
  solve_cmd->add_option("--x-out", solve.x_out, "Write the final iterate (Matrix Market)");

  std::string classify_path;
  std::optional<double> classify_tol;
  auto* classify_cmd = app.add_subcommand("classify", "Report index, EP property, rank and kappa");
  classify_cmd->add_option("--matrix", classify_path, "Matrix Market file")->required();
  classify_cmd->add_option("--tol", classify_tol, "Rank tolerance (default n*ulp(sigma_1))");

  std::string spectrum_path;
  std::string spectrum_out;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dump singular values as CSV");
  spectrum_cmd->add_option("--matrix", spectrum_path, "Matrix Market file")->required();
  spectrum_cmd->add_option("--out", spectrum_out, "Output CSV (default stdout)");

  std::string suite;
  std::string outdir;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = kDefaultSeed;
  auto* bench_cmd = app.add_subcommand("bench", "Run a named experiment suite");
  bench_cmd->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(bench::suite_names()));
  bench_cmd->add_option("--outdir", outdir, "Output directory")->required();
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--seed", seed, "Noise seed for inconsistent systems")
      ->capture_default_str();

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, argv, out);
    if (rhs_cmd->parsed()) return cmd_rhs(rhs, argv, out);
    if (solve_cmd->parsed()) return cmd_solve(solve, argv, out);
    if (classify_cmd->parsed()) return cmd_classify(classify_path, classify_tol, out);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum_path, spectrum_out, argv, out);
    if (bench_cmd->parsed()) return cmd_bench(suite, outdir, jobs, seed, argv, out);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rpgmres::cli
