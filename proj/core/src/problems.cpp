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

#include "rpgmres/problems.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rpgmres/errors.hpp"

namespace rpgmres {

namespace {

void place(DenseMatrix& a, std::size_t r0, std::size_t c0, const DenseMatrix& blk) {
  for (std::size_t j = 0; j < blk.cols(); ++j) {
    for (std::size_t i = 0; i < blk.rows(); ++i) a(r0 + i, c0 + j) = blk(i, j);
  }
}

}  // namespace

void GpParams::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho) || !(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("GpParams: rho and gamma must be positive");
  }
}

std::vector<double> alpha_sequence(double rho) {
  const double last = std::pow(10.0, -rho);
  std::vector<double> a(16);
  a[0] = 1.0;
  for (int j = 2; j <= 15; ++j) {
    a[j - 1] = last + (16.0 - j) / 15.0 * (1.0 - last) * std::pow(0.7, j - 1);
  }
  a[15] = last;
  return a;
}

std::vector<double> beta_sequence(double gamma) {
  const double last = std::pow(10.0, -gamma);
  std::vector<double> b(32);
  b[0] = 1.0;
  for (int i = 2; i <= 31; ++i) {
    b[i - 1] = last + (32.0 - i) / 31.0 * (1.0 - last) * std::pow(0.2, i - 1);
  }
  b[31] = last;
  return b;
}

DenseMatrix jordan_block(std::size_t k, double lambda) {
  if (k == 0) throw std::invalid_argument("jordan_block: k must be >= 1");
  DenseMatrix j(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    j(i, i) = lambda;
    if (i + 1 < k) j(i, i + 1) = 1.0;
  }
  return j;
}

DenseMatrix gen_gp_matrix(const GpParams& params) {
  params.validate();
  const auto alpha = alpha_sequence(params.rho);
  const auto beta = beta_sequence(params.gamma);
  DenseMatrix a(kTestMatrixSize, kTestMatrixSize);
  for (std::size_t j = 0; j < 16; ++j) place(a, 2 * j, 2 * j, jordan_block(2, alpha[j]));
  for (std::size_t i = 0; i < 32; ++i) a(32 + i, 32 + i) = beta[i];
  for (std::size_t j = 0; j < 16; ++j) place(a, 2 * j, 64 + 2 * j, jordan_block(2, beta[j]));
  return a;
}

DenseMatrix gen_index2_matrix(const GpParams& params) {
  DenseMatrix a = gen_gp_matrix(params);
  for (std::size_t i = 1; i <= 16; ++i) a(2 * i + 62, 2 * i + 63) = 1.0;
  return a;
}

DenseVector seeded_uniform(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("seeded_uniform: n must be >= 1");
  std::mt19937_64 gen(seed);
  DenseVector u(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
  }
  return u;
}

RhsMode RhsMode::inconsistent(double noise_scale, std::uint64_t seed) {
  if (!(noise_scale > 0.0) || !std::isfinite(noise_scale)) {
    throw std::invalid_argument("RhsMode: noise scale must be positive");
  }
  return {Kind::Inconsistent, noise_scale, seed};
}

std::string RhsMode::describe() const {
  if (kind == Kind::Consistent) return "consistent";
  std::ostringstream s;
  s << "inconsistent(noise=" << noise_scale << ", seed=" << seed << ")";
  return s.str();
}

DenseVector gen_rhs(const DenseMatrix& a, const RhsMode& mode) {
  if (!a.is_square()) throw DimensionError("gen_rhs: matrix must be square");
  DenseVector b = a * DenseVector(a.cols(), 1.0);
  const double nb = b.norm2();
  if (nb == 0.0) throw NumericalError("gen_rhs: A times the ones vector is zero");
  b *= 1.0 / nb;
  if (mode.kind == RhsMode::Kind::Inconsistent) {
    if (!(mode.noise_scale > 0.0)) {
      throw std::invalid_argument("gen_rhs: noise scale must be positive");
    }
    DenseVector u = seeded_uniform(a.rows(), mode.seed);
    axpy(mode.noise_scale / u.norm2(), u.span(), b.span());
  }
  return b;
}

std::string to_string(ProblemFamily f) {
  switch (f) {
    case ProblemFamily::Gp: return "gp";
    case ProblemFamily::Index2: return "index2";
    case ProblemFamily::Custom: return "custom";
  }
  return "unknown";
}

ProblemFamily parse_family(const std::string& name) {
  if (name == "gp") return ProblemFamily::Gp;
  if (name == "index2") return ProblemFamily::Index2;
  throw std::invalid_argument("unknown matrix family '" + name + "' (expected gp or index2)");
}

ProblemInstance make_problem(ProblemFamily family, const GpParams& params,
                             const RhsMode& mode) {
  ProblemInstance p;
  switch (family) {
    case ProblemFamily::Gp: p.a = gen_gp_matrix(params); break;
    case ProblemFamily::Index2: p.a = gen_index2_matrix(params); break;
    case ProblemFamily::Custom:
      throw std::invalid_argument("make_problem: custom problems have no generator");
  }
  p.b = gen_rhs(p.a, mode);
  p.family = family;
  p.params = params;
  p.rhs_mode = mode;
  return p;
}

}  // namespace rpgmres
