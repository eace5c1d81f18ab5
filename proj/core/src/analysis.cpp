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

#include "rpgmres/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rpgmres/errors.hpp"
#include "rpgmres/linalg.hpp"

namespace rpgmres {

namespace {

void require_square(const DenseMatrix& a, const char* who) {
  if (!a.is_square()) {
    throw DimensionError(std::string(who) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

std::size_t count_above(const DenseVector& sigma, double tol) {
  std::size_t r = 0;
  while (r < sigma.size() && sigma[r] > tol) ++r;
  return r;
}

double default_tol(const DenseVector& sigma, std::size_t n) {
  return static_cast<double>(n) * ulp(sigma.size() ? sigma[0] : 0.0);
}

}  // namespace

DenseVector min_norm_lsq(const DenseMatrix& a, const DenseVector& b, double tol) {
  if (b.size() != a.rows()) {
    throw DimensionError("min_norm_lsq: right-hand side has " + std::to_string(b.size()) +
                         " entries, expected " + std::to_string(a.rows()));
  }
  return pinv_solve(a, b, PinvPolicy::absolute(tol)).x;
}

std::size_t matrix_index(const DenseMatrix& a, double tol) {
  require_square(a, "matrix_index");
  if (!(tol >= 0.0)) throw std::invalid_argument("matrix_index: tol must be >= 0");
  const std::size_t n = a.rows();
  if (n == 0) return 0;
  const SvdResult s = svd(a);
  const std::size_t r = count_above(s.sigma, tol);
  if (r == n) return 0;
  if (r == 0) return 1;

  const DenseMatrix u1 = s.u.block(0, 0, n, r);
  const DenseMatrix z1 = s.v.block(0, r, n, n - r);
  // A^+ restricted to R(A): V_1 Sigma_1^{-1} U_1^T.
  DenseMatrix v1s = s.v.block(0, 0, n, r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < n; ++i) v1s(i, j) /= s.sigma[j];
  }
  const double sine_tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon();

  DenseMatrix z = z1;
  std::size_t prev_rank = r;
  for (std::size_t i = 1; i <= n; ++i) {
    // Sines of the principal angles between span(Z) and R(A).
    const DenseMatrix p = z - u1 * multiply_transpose(u1, z);
    const SvdResult ps = svd(p);
    const std::size_t c = z.cols();
    std::size_t k = 0;
    while (k < c && ps.sigma[c - 1 - k] <= sine_tol) ++k;

    if (k == 0) {
      z = z1;
    } else {
      // Directions of N(A^i) lying in R(A), pulled back through A.
      const DenseMatrix w = z * ps.v.block(0, c - k, c, k);
      const DenseMatrix pre = v1s * multiply_transpose(u1, w);
      const SvdResult q = svd(pre);
      z = hcat(z1, q.u.block(0, 0, n, k));
    }
    const std::size_t rank = n - z.cols();
    if (rank == prev_rank) return i;
    prev_rank = rank;
  }
  return n;
}

std::size_t matrix_index(const DenseMatrix& a) {
  require_square(a, "matrix_index");
  return matrix_index(a, default_rank_tolerance(a));
}

double range_symmetry_defect(const DenseMatrix& a, double tol) {
  require_square(a, "is_range_symmetric");
  const std::size_t n = a.rows();
  const SvdResult s = svd(a);
  const std::size_t r = count_above(s.sigma, tol);
  if (r == n) return 0.0;
  const DenseMatrix u2 = s.u.block(0, r, n, n - r);
  const DenseMatrix v2 = s.v.block(0, r, n, n - r);
  return std::max((a * u2).frobenius_norm(), multiply_transpose(a, v2).frobenius_norm());
}

bool is_range_symmetric(const DenseMatrix& a, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("is_range_symmetric: tol must be >= 0");
  return range_symmetry_defect(a, tol) <= std::sqrt(static_cast<double>(a.rows())) * tol;
}

bool is_range_symmetric(const DenseMatrix& a) {
  require_square(a, "is_range_symmetric");
  return is_range_symmetric(a, default_rank_tolerance(a));
}

ResidualReport residual_metrics(const DenseMatrix& a, const DenseVector& b,
                                const DenseVector& x) {
  if (b.size() != a.rows() || x.size() != a.cols()) {
    throw DimensionError("residual_metrics: dimension mismatch");
  }
  const DenseVector r = b - a * x;
  const double nb = b.norm2();
  const double natb = multiply_transpose(a, b).norm2();
  ResidualReport out;
  out.degenerate = nb == 0.0 || natb == 0.0;
  out.rel_res = nb == 0.0 ? 0.0 : r.norm2() / nb;
  out.at_rel_res = natb == 0.0 ? 0.0 : multiply_transpose(a, r).norm2() / natb;
  return out;
}

MatrixClassification classify(const DenseMatrix& a, double tol) {
  require_square(a, "classify");
  const DenseVector sigma = singular_values(a);
  MatrixClassification c;
  c.tol = tol;
  c.rank = count_above(sigma, tol);
  c.sigma_max = sigma.size() ? sigma[0] : 0.0;
  c.sigma_min_pos = c.rank ? sigma[c.rank - 1] : 0.0;
  c.kappa = c.rank ? c.sigma_max / c.sigma_min_pos : std::numeric_limits<double>::infinity();
  c.index = matrix_index(a, tol);
  c.is_ep = is_range_symmetric(a, tol);
  return c;
}

MatrixClassification classify(const DenseMatrix& a) {
  require_square(a, "classify");
  return classify(a, default_rank_tolerance(a));
}

DenseVector project_onto_range(const DenseMatrix& a, const DenseVector& v, double tol) {
  if (v.size() != a.rows()) throw DimensionError("project_onto_range: length mismatch");
  const SvdResult s = svd(a);
  const std::size_t r = count_above(s.sigma, tol);
  DenseVector out(a.rows());
  for (std::size_t j = 0; j < r; ++j) {
    axpy(dot(s.u.col(j), v.span()), s.u.col(j), out.span());
  }
  return out;
}

TheoremBound theorem_bound(const BoundInputs& in, std::size_t k) {
  if (!(in.sigma_r > 0.0)) throw std::invalid_argument("theorem_bound: sigma_r must be > 0");
  if (!(in.sigma1 >= in.sigma_r)) {
    throw std::invalid_argument("theorem_bound: sigma1 must be >= sigma_r");
  }
  if (!(in.kappa_a >= 1.0)) throw std::invalid_argument("theorem_bound: kappa must be >= 1");
  if (!(in.at_r0_norm >= 0.0) || !(in.r0_range_norm >= 0.0)) {
    throw std::invalid_argument("theorem_bound: norms must be >= 0");
  }
  const double q = (in.sigma1 - in.sigma_r) / (in.sigma1 + in.sigma_r);
  const double qk = std::pow(q, static_cast<double>(k));
  return {2.0 * qk * in.r0_range_norm, 2.0 * in.kappa_a * qk * in.at_r0_norm};
}

BoundInputs bound_inputs_for(const DenseMatrix& a, const DenseVector& c_diag,
                             const DenseVector& b) {
  require_square(a, "bound_inputs_for");
  if (c_diag.size() != a.cols() || b.size() != a.rows()) {
    throw DimensionError("bound_inputs_for: dimension mismatch");
  }
  const std::size_t n = a.rows();
  std::vector<double> c_half(n);
  for (std::size_t j = 0; j < n; ++j) c_half[j] = std::sqrt(c_diag[j]);
  const DenseVector s_ac = singular_values(scale_columns(a, c_half));
  const DenseVector s_a = singular_values(a);
  const std::size_t r_ac = count_above(s_ac, default_tol(s_ac, n));
  const std::size_t r_a = count_above(s_a, default_tol(s_a, n));
  if (r_ac == 0 || r_a == 0) throw NumericalError("bound_inputs_for: zero matrix");

  BoundInputs in;
  in.sigma1 = s_ac[0];
  in.sigma_r = s_ac[r_ac - 1];
  in.kappa_a = s_a[0] / s_a[r_a - 1];
  in.at_r0_norm = multiply_transpose(a, b).norm2();
  in.r0_range_norm = project_onto_range(a, b, default_tol(s_a, n)).norm2();
  return in;
}

}  // namespace rpgmres
