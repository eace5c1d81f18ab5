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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpgmres/dense.hpp"
#include "rpgmres/linalg.hpp"

namespace rpgmres {

/// Square linear map x -> A x given by callbacks. The transpose action is
/// optional; it is needed only for the default ||A^T r|| metric.
class LinearOperator {
 public:
  using Apply = std::function<DenseVector(const DenseVector&)>;

  LinearOperator(std::size_t n, Apply apply, Apply apply_transpose = {},
                 std::optional<double> frobenius_norm = std::nullopt);

  /// Wraps a copy of a square dense matrix.
  static LinearOperator from_matrix(DenseMatrix a);

  std::size_t size() const noexcept { return n_; }
  DenseVector apply(const DenseVector& x) const;
  bool has_transpose() const noexcept { return static_cast<bool>(apply_t_); }
  DenseVector apply_transpose(const DenseVector& x) const;
  /// Scale used by the relative breakdown test; unknown for general callbacks.
  std::optional<double> frobenius_norm() const noexcept { return fro_; }

 private:
  std::size_t n_;
  Apply apply_;
  Apply apply_t_;
  std::optional<double> fro_;
};

struct ArnoldiStepResult {
  double h_next = 0.0;     ///< h_{k+2,k+1}
  bool breakdown = false;  ///< h_next == 0 exactly
};

class ArnoldiState;
ArnoldiStepResult arnoldi_step(const LinearOperator& op, ArnoldiState& state,
                               bool reorthogonalize);

/// Incrementally built Arnoldi basis V_{k+1} and Hessenberg matrix H_{k+1,k}.
class ArnoldiState {
 public:
  /// Starts from v_1 = r0 / ||r0||. Throws std::invalid_argument if r0 = 0.
  explicit ArnoldiState(const DenseVector& r0);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t steps() const noexcept { return hess_cols_.size(); }
  double beta() const noexcept { return beta_; }
  /// True once a step produced an exactly zero subdiagonal entry.
  bool broken_down() const noexcept { return broken_down_; }

  /// v_1 .. v_{k+1} (only v_1 .. v_k after an exact breakdown).
  const std::vector<DenseVector>& basis() const noexcept { return basis_; }
  /// First `count` basis vectors as columns.
  DenseMatrix basis_matrix(std::size_t count) const;
  /// The (k+1) x k upper Hessenberg matrix.
  DenseMatrix hessenberg() const;
  /// Column j (0-based) of the Hessenberg matrix, length j+2.
  std::span<const double> hessenberg_column(std::size_t j) const {
    return hess_cols_.at(j);
  }

 private:
  friend ArnoldiStepResult arnoldi_step(const LinearOperator&, ArnoldiState&,
                                        bool);
  std::size_t n_;
  double beta_;
  bool broken_down_ = false;
  std::vector<DenseVector> basis_;
  std::vector<std::vector<double>> hess_cols_;
};

/// One classical Gram-Schmidt pass: w -= sum_i (w, v_i) v_i, with every
/// coefficient computed from the incoming w. Returns the coefficients.
std::vector<double> gram_schmidt_pass(std::span<const DenseVector> basis,
                                      DenseVector& w);

/// Extends the Arnoldi factorization by one column. With `reorthogonalize`,
/// a second classical Gram-Schmidt pass is applied and its coefficients are
/// folded into the Hessenberg column.
ArnoldiStepResult arnoldi_step(const LinearOperator& op, ArnoldiState& state,
                               bool reorthogonalize);

/// Least-squares solver for min || beta e_1 - H y || that absorbs one
/// Hessenberg column at a time with Givens rotations.
class GivensLeastSquares {
 public:
  explicit GivensLeastSquares(double beta);

  /// Column k (0-based) must have k+2 entries.
  void append_column(std::span<const double> h);
  std::size_t columns() const noexcept { return r_cols_.size(); }
  /// |beta e_1 - H y| at the minimizer.
  double residual_norm() const;
  /// Back substitution on the rotated triangle. Throws NumericalError when a
  /// diagonal entry is exactly zero (rank-deficient H).
  DenseVector solve() const;

 private:
  std::vector<std::vector<double>> r_cols_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<double> g_;
};

/// Minimizer of ||beta e_1 - hess y|| by Givens QR. hess is (k+1) x k.
DenseVector solve_hessenberg_givens(const DenseMatrix& hess, double beta);

struct HessenbergPinvSolution {
  DenseVector y;
  std::size_t rank_used = 0;
  double tol_used = 0.0;
  DenseVector sigma;
};

/// y = pinv_truncated(hess, policy) * (beta e_1), the minimum-norm solution
/// of the truncated problem.
HessenbergPinvSolution solve_hessenberg_pinv(const DenseMatrix& hess,
                                             double beta,
                                             const PinvPolicy& policy);

struct HessSolveStrategy {
  enum class Kind { GivensQR, PinvTruncated };
  Kind kind = Kind::GivensQR;
  PinvPolicy policy = PinvPolicy::no_truncation();

  static HessSolveStrategy givens() { return {}; }
  static HessSolveStrategy pinv(PinvPolicy p) {
    return {Kind::PinvTruncated, p};
  }
  std::string describe() const;
};

enum class StopMetric { RelRes, AtRelRes };

struct SolveConfig {
  HessSolveStrategy strategy = HessSolveStrategy::givens();
  bool reorthogonalize = false;
  std::size_t max_iter = 128;
  /// Breakdown when h_{j+1,j} <= breakdown_tol * max(1, ||A||_F).
  double breakdown_tol = 1e-15;
  StopMetric stop_metric = StopMetric::RelRes;
  double stop_tol = 1e-10;
  /// Record sigma_1 and sigma_min of H every iteration (an SVD per step
  /// unless the pseudoinverse strategy computes it anyway).
  bool record_hessenberg_spectrum = false;

  void validate() const;
};

struct IterateRecord {
  std::size_t iter = 0;
  double rel_res = 0.0;     ///< ||r_k|| / ||b||
  double at_rel_res = 0.0;  ///< ||A^T r_k|| / ||A^T b||
  double h_subdiag = 0.0;   ///< h_{k+1,k}
  double sigma_max_h = 0.0; ///< NaN when not recorded
  double sigma_min_h = 0.0; ///< NaN when not recorded
  std::size_t rank_used = 0;
  double tol_used = 0.0;
};

enum class Termination { Converged, Breakdown, MaxIter };

std::string to_string(Termination t);

struct ConvergenceHistory {
  std::vector<IterateRecord> records;
  Termination termination = Termination::MaxIter;
  DenseVector final_x;
  /// Set when ||b|| or ||A^T b|| vanished and the ratio was reported as 0.
  bool degenerate_denominator = false;

  std::size_t iterations() const noexcept { return records.size(); }
  /// Smallest value over the records; +inf when there are none.
  double min_rel_res() const;
  double min_at_rel_res() const;
  double min_metric(StopMetric m) const;
};

/// Residual ratios of an iterate measured on the original system.
struct ResidualMetrics {
  double rel_res = 0.0;
  double at_rel_res = 0.0;
  bool degenerate = false;
};

struct IterateHooks {
  /// Measures the Krylov iterate (x_0 + V_k y). Defaults to the operator's
  /// own residual and transpose.
  std::function<ResidualMetrics(const DenseVector&)> metrics;
  /// Called after each iteration with the Krylov iterate.
  std::function<void(std::size_t, const DenseVector&)> observe;
};

/// Full-memory GMRES. Each iteration appends one IterateRecord. On
/// breakdown the current Hessenberg problem is still solved and its iterate
/// returned. Throws DimensionError on shape mismatch and NumericalError when
/// the recurrence produces NaN.
ConvergenceHistory gmres(const LinearOperator& op, const DenseVector& b,
                         const DenseVector& x0, const SolveConfig& config,
                         const IterateHooks& hooks = {});

}  // namespace rpgmres
