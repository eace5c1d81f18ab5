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

#include "rpgmres/precond.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "rpgmres/errors.hpp"

namespace rpgmres {

namespace {

void require_square(const DenseMatrix& a, std::size_t b_len, const char* who) {
  if (!a.is_square()) {
    throw DimensionError(std::string(who) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (b_len != a.rows()) {
    throw DimensionError(std::string(who) + ": right-hand side has " +
                         std::to_string(b_len) + " entries, expected " +
                         std::to_string(a.rows()));
  }
}

DenseVector hadamard(const DenseVector& c, DenseVector v) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= c[i];
  return v;
}

// Residual ratios of x on the original system, with zero-denominator guards.
struct OriginalMetrics {
  std::shared_ptr<const DenseMatrix> a;
  DenseVector b;
  double b_norm;
  double atb_norm;

  ResidualMetrics operator()(const DenseVector& x) const {
    const DenseVector r = b - *a * x;
    ResidualMetrics m;
    m.degenerate = b_norm == 0.0 || atb_norm == 0.0;
    m.rel_res = b_norm == 0.0 ? 0.0 : r.norm2() / b_norm;
    m.at_rel_res = atb_norm == 0.0 ? 0.0 : multiply_transpose(*a, r).norm2() / atb_norm;
    return m;
  }
};

void check_precond(const DenseMatrix& a, const PrecondKind& p) {
  if (p.kind == PrecondKind::Kind::CAt && p.c_diag.size() != a.cols()) {
    throw DimensionError("preconditioner diagonal has " + std::to_string(p.c_diag.size()) +
                         " entries, expected " + std::to_string(a.cols()));
  }
}

}  // namespace

PrecondKind PrecondKind::cat(DenseVector c_diag) {
  for (std::size_t i = 0; i < c_diag.size(); ++i) {
    if (!(c_diag[i] > 0.0) || !std::isfinite(c_diag[i])) {
      throw std::invalid_argument("PrecondKind::cat: diagonal entry " + std::to_string(i) +
                                  " is not positive");
    }
  }
  return {Kind::CAt, std::move(c_diag)};
}

std::string PrecondKind::describe() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::At: return "at";
    case Kind::CAt: return "cat";
  }
  return "unknown";
}

std::string to_string(MethodKind m) {
  switch (m) {
    case MethodKind::Gmres: return "gmres";
    case MethodKind::AbGmres: return "ab-gmres";
    case MethodKind::BaGmres: return "ba-gmres";
  }
  return "unknown";
}

DenseVector build_jacobi_spd(const DenseMatrix& a) {
  DenseVector c(a.cols(), 1.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const double s = dot(a.col(j), a.col(j));
    if (s > 0.0) c[j] = 1.0 / s;
  }
  return c;
}

DenseVector apply_preconditioner(const DenseMatrix& a, const PrecondKind& p,
                                 const DenseVector& z) {
  switch (p.kind) {
    case PrecondKind::Kind::None: return z;
    case PrecondKind::Kind::At: return multiply_transpose(a, z);
    case PrecondKind::Kind::CAt: return hadamard(p.c_diag, multiply_transpose(a, z));
  }
  return z;
}

DenseMatrix preconditioner_matrix(const DenseMatrix& a, const PrecondKind& p) {
  check_precond(a, p);
  switch (p.kind) {
    case PrecondKind::Kind::None: return DenseMatrix::identity(a.rows());
    case PrecondKind::Kind::At: return a.transpose();
    case PrecondKind::Kind::CAt: {
      DenseMatrix at = a.transpose();
      for (std::size_t j = 0; j < at.cols(); ++j) {
        for (std::size_t i = 0; i < at.rows(); ++i) at(i, j) *= p.c_diag[i];
      }
      return at;
    }
  }
  return DenseMatrix::identity(a.rows());
}

ConvergenceHistory ab_gmres(const DenseMatrix& a, const PrecondKind& precond,
                            const DenseVector& b, const DenseVector& z0,
                            const SolveConfig& config, const IterateObserver& observe) {
  require_square(a, b.size(), "ab_gmres");
  if (z0.size() != a.rows()) throw DimensionError("ab_gmres: z0 length mismatch");
  if (precond.kind == PrecondKind::Kind::None) {
    throw std::invalid_argument("ab_gmres: a preconditioner (at or cat) is required");
  }
  check_precond(a, precond);

  auto am = std::make_shared<const DenseMatrix>(a);
  auto pc = std::make_shared<const PrecondKind>(precond);
  const OriginalMetrics metrics{am, b, b.norm2(), multiply_transpose(a, b).norm2()};

  if (metrics.atb_norm == 0.0) {
    // b is orthogonal to R(A): the starting point is already least-squares optimal.
    ConvergenceHistory h;
    h.termination = Termination::Converged;
    h.final_x = apply_preconditioner(a, precond, z0);
    h.degenerate_denominator = true;
    return h;
  }

  auto to_x = [am, pc](const DenseVector& z) { return apply_preconditioner(*am, *pc, z); };
  // (A C A^T)^T = A C A^T and (A A^T)^T = A A^T, so both actions coincide.
  auto op_apply = [am, to_x](const DenseVector& z) { return *am * to_x(z); };
  const LinearOperator op(a.rows(), op_apply, op_apply, a.frobenius_norm());

  IterateHooks hooks;
  hooks.metrics = [metrics, to_x](const DenseVector& z) { return metrics(to_x(z)); };
  if (observe) {
    hooks.observe = [&observe, to_x](std::size_t k, const DenseVector& z) {
      observe(k, to_x(z));
    };
  }
  ConvergenceHistory h = gmres(op, b, z0, config, hooks);
  h.final_x = to_x(h.final_x);
  return h;
}

ConvergenceHistory ba_gmres(const DenseMatrix& a, const PrecondKind& precond,
                            const DenseVector& b, const DenseVector& x0,
                            const SolveConfig& config, const IterateObserver& observe) {
  require_square(a, b.size(), "ba_gmres");
  if (x0.size() != a.cols()) throw DimensionError("ba_gmres: x0 length mismatch");
  if (precond.kind == PrecondKind::Kind::None) {
    throw std::invalid_argument("ba_gmres: a preconditioner (at or cat) is required");
  }
  check_precond(a, precond);

  auto am = std::make_shared<const DenseMatrix>(a);
  auto pc = std::make_shared<const PrecondKind>(precond);
  const OriginalMetrics metrics{am, b, b.norm2(), multiply_transpose(a, b).norm2()};
  const DenseVector bb = apply_preconditioner(a, precond, b);

  if (bb.norm2() == 0.0) {
    ConvergenceHistory h;
    h.termination = Termination::Converged;
    h.final_x = x0;
    h.degenerate_denominator = true;
    return h;
  }

  auto op_apply = [am, pc](const DenseVector& x) {
    return apply_preconditioner(*am, *pc, *am * x);
  };
  // (B A)^T w = A^T (B^T w); B^T = A for At and A C for CAt.
  auto op_apply_t = [am, pc](const DenseVector& w) {
    DenseVector v = pc->kind == PrecondKind::Kind::CAt ? hadamard(pc->c_diag, w) : w;
    return multiply_transpose(*am, *am * v);
  };
  const LinearOperator op(a.rows(), op_apply, op_apply_t, a.frobenius_norm());

  IterateHooks hooks;
  hooks.metrics = metrics;
  if (observe) hooks.observe = observe;
  return gmres(op, bb, x0, config, hooks);
}

ConvergenceHistory ba_gmres(const DenseMatrix& a, const DenseVector& b,
                            const DenseVector& x0, const SolveConfig& config,
                            const IterateObserver& observe) {
  return ba_gmres(a, PrecondKind::at(), b, x0, config, observe);
}

ConvergenceHistory gmres_dense(const DenseMatrix& a, const DenseVector& b,
                               const DenseVector& x0, const SolveConfig& config,
                               const IterateObserver& observe) {
  require_square(a, b.size(), "gmres");
  const LinearOperator op = LinearOperator::from_matrix(a);
  IterateHooks hooks;
  if (observe) hooks.observe = observe;
  return gmres(op, b, x0, config, hooks);
}

ConvergenceHistory solve_system(MethodKind method, const DenseMatrix& a,
                                const PrecondKind& precond, const DenseVector& b,
                                const SolveConfig& config, const IterateObserver& observe) {
  const DenseVector zero(a.cols());
  switch (method) {
    case MethodKind::Gmres: return gmres_dense(a, b, zero, config, observe);
    case MethodKind::AbGmres: return ab_gmres(a, precond, b, zero, config, observe);
    case MethodKind::BaGmres: return ba_gmres(a, precond, b, zero, config, observe);
  }
  throw std::invalid_argument("solve_system: unknown method");
}

}  // namespace rpgmres
