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

#include <cstddef>

#include "rpgmres/dense.hpp"

namespace rpgmres {

struct MatrixClassification {
  std::size_t index = 0;
  bool is_ep = false;
  std::size_t rank = 0;
  double sigma_max = 0.0;
  double sigma_min_pos = 0.0;  ///< smallest singular value above the tolerance
  double kappa = 1.0;          ///< sigma_max / sigma_min_pos; +inf for the zero matrix
  double tol = 0.0;            ///< rank tolerance used
};

/// Minimum-norm least-squares solution A~^+ b, where A~ drops singular
/// values below tol.
DenseVector min_norm_lsq(const DenseMatrix& a, const DenseVector& b, double tol);

/// Smallest i with rank(A^i) = rank(A^{i+1}), ranks counted with `tol`.
/// Powers are never formed: the null spaces N(A^{i+1}) = N(A) + A^+ (N(A^i) ∩
/// R(A)) are built from the SVD of A, with the intersection found from the
/// principal angles between N(A^i) and R(A).
std::size_t matrix_index(const DenseMatrix& a, double tol);
/// Same with tol = n * ulp(sigma_1(A)).
std::size_t matrix_index(const DenseMatrix& a);

/// max(||A U_2||_F, ||A^T V_2||_F) where U_2, V_2 span N(A^T) and N(A) at
/// numerical rank `tol`. Zero exactly when R(A) = R(A^T).
double range_symmetry_defect(const DenseMatrix& a, double tol);

/// True when range_symmetry_defect(a, tol) <= sqrt(n) * tol.
bool is_range_symmetric(const DenseMatrix& a, double tol);
bool is_range_symmetric(const DenseMatrix& a);

struct ResidualReport {
  double rel_res = 0.0;     ///< ||b - A x|| / ||b||, 0 when b = 0
  double at_rel_res = 0.0;  ///< ||A^T (b - A x)|| / ||A^T b||, 0 when A^T b = 0
  bool degenerate = false;  ///< a denominator vanished
};

ResidualReport residual_metrics(const DenseMatrix& a, const DenseVector& b,
                                const DenseVector& x);

MatrixClassification classify(const DenseMatrix& a, double tol);
MatrixClassification classify(const DenseMatrix& a);

/// Orthogonal projection of v onto R(A) at numerical rank `tol`.
DenseVector project_onto_range(const DenseMatrix& a, const DenseVector& v, double tol);

/// Spectral data for the AB-GMRES residual bounds. sigma1 and sigma_r are
/// extreme nonzero singular values of A C^{1/2}; kappa_a is sigma_1(A) /
/// sigma_r(A).
struct BoundInputs {
  double sigma1 = 1.0;
  double sigma_r = 1.0;
  double kappa_a = 1.0;
  double at_r0_norm = 0.0;     ///< ||A^T r_0||
  double r0_range_norm = 0.0;  ///< ||r_0 restricted to R(A)||
};

struct TheoremBound {
  double res_bound = 0.0;  ///< bound on ||r_k restricted to R(A)||
  double atr_bound = 0.0;  ///< bound on ||A^T r_k||
};

/// With q = (sigma1 - sigma_r) / (sigma1 + sigma_r): res_bound = 2 q^k
/// r0_range_norm and atr_bound = 2 kappa_a q^k at_r0_norm. Throws
/// std::invalid_argument unless sigma1 >= sigma_r > 0, kappa_a >= 1 and
/// the norms are nonnegative.
TheoremBound theorem_bound(const BoundInputs& inputs, std::size_t k);

/// Fills BoundInputs for B = C A^T, x_0 = 0 and right-hand side b, using
/// rank tolerance n * ulp(sigma_1) on both A and A C^{1/2}.
BoundInputs bound_inputs_for(const DenseMatrix& a, const DenseVector& c_diag,
                             const DenseVector& b);

}  // namespace rpgmres
