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
#include <string>

#include "rpgmres/dense.hpp"
#include "rpgmres/krylov.hpp"

namespace rpgmres {

/// Right preconditioner B for AB-GMRES: B = A^T or B = C A^T with C a
/// positive diagonal.
struct PrecondKind {
  enum class Kind { None, At, CAt };
  Kind kind = Kind::None;
  DenseVector c_diag;  ///< only used for CAt

  static PrecondKind none() { return {}; }
  static PrecondKind at() { return {Kind::At, {}}; }
  /// Throws std::invalid_argument unless every entry is positive and finite.
  static PrecondKind cat(DenseVector c_diag);

  std::string describe() const;
};

enum class MethodKind { Gmres, AbGmres, BaGmres };

std::string to_string(MethodKind m);

/// Receives the iterate in the original x space after every iteration.
using IterateObserver = std::function<void(std::size_t, const DenseVector&)>;

/// c_j = 1 / ||A(:,j)||^2, or 1 when the column is zero.
DenseVector build_jacobi_spd(const DenseMatrix& a);

/// B z for the given preconditioner.
DenseVector apply_preconditioner(const DenseMatrix& a, const PrecondKind& p,
                                 const DenseVector& z);

/// Explicit B, for tests and diagnostics.
DenseMatrix preconditioner_matrix(const DenseMatrix& a, const PrecondKind& p);

/// GMRES on min ||b - A B z|| with x = B z. Records are measured on the
/// original residual b - A x; final_x is in x space.
ConvergenceHistory ab_gmres(const DenseMatrix& a, const PrecondKind& precond,
                            const DenseVector& b, const DenseVector& z0,
                            const SolveConfig& config,
                            const IterateObserver& observe = {});

/// GMRES on A^T A x = A^T b.
ConvergenceHistory ba_gmres(const DenseMatrix& a, const DenseVector& b,
                            const DenseVector& x0, const SolveConfig& config,
                            const IterateObserver& observe = {});

/// GMRES on B A x = B b with B = A^T or C A^T.
ConvergenceHistory ba_gmres(const DenseMatrix& a, const PrecondKind& precond,
                            const DenseVector& b, const DenseVector& x0,
                            const SolveConfig& config,
                            const IterateObserver& observe = {});

/// Plain GMRES on A x = b for a dense matrix.
ConvergenceHistory gmres_dense(const DenseMatrix& a, const DenseVector& b,
                               const DenseVector& x0, const SolveConfig& config,
                               const IterateObserver& observe = {});

/// Dispatches on the method with a zero initial guess. The preconditioner is
/// ignored for Gmres.
ConvergenceHistory solve_system(MethodKind method, const DenseMatrix& a,
                                const PrecondKind& precond,
                                const DenseVector& b, const SolveConfig& config,
                                const IterateObserver& observe = {});

}  // namespace rpgmres
