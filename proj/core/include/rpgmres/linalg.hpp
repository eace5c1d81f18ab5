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
#include <span>
#include <string>

#include "rpgmres/dense.hpp"

namespace rpgmres {

/// Full singular value decomposition B = U diag(sigma) V^T with U (m x m)
/// and V (n x n) orthogonal and sigma (min(m,n)) sorted nonincreasing.
struct SvdResult {
  DenseMatrix u;
  DenseVector sigma;
  DenseMatrix v;
};

/// How the singular-value cutoff of a truncated pseudoinverse is chosen.
class PinvPolicy {
 public:
  enum class Kind {
    DefaultNumericalRank,  ///< max(m,n) * ulp(sigma_1)
    RelativeToSigma1,      ///< alpha * sigma_1, 0 < alpha < 1
    Absolute,              ///< a fixed tolerance
    NoTruncation,          ///< every strictly positive singular value kept
  };

  static PinvPolicy default_numerical_rank() {
    return PinvPolicy(Kind::DefaultNumericalRank, 0.0);
  }
  static PinvPolicy relative_to_sigma1(double alpha);
  static PinvPolicy absolute(double tol);
  static PinvPolicy no_truncation() { return PinvPolicy(Kind::NoTruncation, 0.0); }

  Kind kind() const noexcept { return kind_; }
  /// alpha for RelativeToSigma1, tol for Absolute, 0 otherwise.
  double parameter() const noexcept { return param_; }

  /// Cutoff for a matrix of shape m x n whose largest singular value is
  /// sigma1. NoTruncation resolves to 0.
  double resolve(double sigma1, std::size_t m, std::size_t n) const;

  std::string describe() const;

 private:
  PinvPolicy(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

struct PinvResult {
  DenseMatrix pinv;
  std::size_t rank_used = 0;
  double tol_used = 0.0;
};

/// Minimum-norm solution of min ||rhs - B x|| after truncating B's spectrum.
struct PinvSolveResult {
  DenseVector x;
  std::size_t rank_used = 0;
  double tol_used = 0.0;
  DenseVector sigma;  ///< all singular values of B, nonincreasing
};

/// Deterministic one-sided (Hestenes) Jacobi SVD. Throws NumericalError if
/// the sweep budget is exhausted.
SvdResult svd(const DenseMatrix& b);

/// Singular values only, nonincreasing.
DenseVector singular_values(const DenseMatrix& b);

/// B~^+ = V_1 Sigma_1^{-1} U_1^T where Sigma_1 keeps every sigma >= tol_used
/// (and > 0). A singular value equal to the cutoff is kept.
PinvResult pinv_truncated(const DenseMatrix& b, const PinvPolicy& policy);

/// pinv_truncated(b, policy) * rhs without forming the pseudoinverse.
PinvSolveResult pinv_solve(const DenseMatrix& b, const DenseVector& rhs,
                           const PinvPolicy& policy);

/// Distance from |x| to the next larger double; ulp(0) is the smallest
/// subnormal. Throws std::domain_error on NaN or infinity.
double ulp(double x);

/// Number of singular values strictly greater than tol.
std::size_t rank_with_tol(const DenseMatrix& b, double tol);

/// max(m,n) * ulp(sigma_1(B)).
double default_rank_tolerance(const DenseMatrix& b);

/// ||V^T V - I||_F.
double orthonormality_defect(const DenseMatrix& v);

}  // namespace rpgmres
