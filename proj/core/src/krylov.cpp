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

#include "rpgmres/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rpgmres {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearOperator

LinearOperator::LinearOperator(std::size_t n, Apply apply, Apply apply_transpose,
                               std::optional<double> frobenius_norm)
    : n_(n),
      apply_(std::move(apply)),
      apply_t_(std::move(apply_transpose)),
      fro_(frobenius_norm) {
  if (!apply_) throw std::invalid_argument("LinearOperator: empty apply callback");
}

LinearOperator LinearOperator::from_matrix(DenseMatrix a) {
  if (!a.is_square()) throw DimensionError("LinearOperator: matrix must be square");
  auto shared = std::make_shared<const DenseMatrix>(std::move(a));
  const double fro = shared->frobenius_norm();
  return LinearOperator(
      shared->rows(), [shared](const DenseVector& x) { return *shared * x; },
      [shared](const DenseVector& x) { return multiply_transpose(*shared, x); },
      fro);
}

DenseVector LinearOperator::apply(const DenseVector& x) const {
  if (x.size() != n_) throw DimensionError("LinearOperator: input length mismatch");
  DenseVector y = apply_(x);
  if (y.size() != n_) throw DimensionError("LinearOperator: output length mismatch");
  return y;
}

DenseVector LinearOperator::apply_transpose(const DenseVector& x) const {
  if (!apply_t_) throw std::logic_error("LinearOperator: no transpose action");
  if (x.size() != n_) throw DimensionError("LinearOperator: input length mismatch");
  return apply_t_(x);
}

// ---------------------------------------------------------------------------
// Arnoldi

ArnoldiState::ArnoldiState(const DenseVector& r0) : n_(r0.size()), beta_(r0.norm2()) {
  if (!(beta_ > 0.0)) throw std::invalid_argument("ArnoldiState: zero starting vector");
  DenseVector v1 = r0;
  v1 *= 1.0 / beta_;
  basis_.push_back(std::move(v1));
}

DenseMatrix ArnoldiState::basis_matrix(std::size_t count) const {
  if (count > basis_.size()) throw DimensionError("basis_matrix: not enough vectors");
  return DenseMatrix::from_columns(std::span<const DenseVector>(basis_.data(), count));
}

DenseMatrix ArnoldiState::hessenberg() const {
  const std::size_t k = steps();
  DenseMatrix h(k + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& c = hess_cols_[j];
    for (std::size_t i = 0; i < c.size(); ++i) h(i, j) = c[i];
  }
  return h;
}

std::vector<double> gram_schmidt_pass(std::span<const DenseVector> basis,
                                      DenseVector& w) {
  std::vector<double> h(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) h[i] = dot(basis[i].span(), w.span());
  for (std::size_t i = 0; i < basis.size(); ++i) axpy(-h[i], basis[i].span(), w.span());
  return h;
}

namespace {
constexpr int kMaxReorthPasses = 4;
constexpr double kReorthKeepRatio = 0.5;
}  // namespace

ArnoldiStepResult arnoldi_step(const LinearOperator& op, ArnoldiState& state,
                               bool reorthogonalize) {
  if (op.size() != state.dimension()) {
    throw DimensionError("arnoldi_step: operator and basis dimensions differ");
  }
  if (state.broken_down_) {
    throw std::logic_error("arnoldi_step: basis cannot be extended after breakdown");
  }
  const std::size_t j = state.steps();
  DenseVector w = op.apply(state.basis_[j]);
  const std::span<const DenseVector> basis(state.basis_.data(), j + 1);
  std::vector<double> h = gram_schmidt_pass(basis, w);
  if (reorthogonalize) {
    // A second pass always runs. Further passes run only while a pass still
    // cancels most of w, which happens once w is rounding noise near a
    // numerical breakdown. If w never settles it lies in span(V) to working
    // precision and the step is an exact breakdown.
    bool settled = false;
    for (int pass = 0; pass < kMaxReorthPasses && !settled; ++pass) {
      const double before = w.norm2();
      const std::vector<double> h2 = gram_schmidt_pass(basis, w);
      for (std::size_t i = 0; i < h.size(); ++i) h[i] += h2[i];
      settled = w.norm2() >= kReorthKeepRatio * before;
    }
    if (!settled) w = DenseVector(w.size());
  }
  const double h_next = w.norm2();
  h.push_back(h_next);
  state.hess_cols_.push_back(std::move(h));

  ArnoldiStepResult result{h_next, h_next == 0.0};
  if (result.breakdown) {
    state.broken_down_ = true;
  } else if (std::isfinite(h_next)) {
    w *= 1.0 / h_next;
    state.basis_.push_back(std::move(w));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Hessenberg least squares

GivensLeastSquares::GivensLeastSquares(double beta) : g_{beta} {}

void GivensLeastSquares::append_column(std::span<const double> h) {
  const std::size_t k = columns();
  if (h.size() != k + 2) {
    throw DimensionError("GivensLeastSquares: column " + std::to_string(k) +
                         " needs " + std::to_string(k + 2) + " entries");
  }
  std::vector<double> col(h.begin(), h.end());
  for (std::size_t i = 0; i < k; ++i) {
    const double t = cos_[i] * col[i] + sin_[i] * col[i + 1];
    col[i + 1] = -sin_[i] * col[i] + cos_[i] * col[i + 1];
    col[i] = t;
  }
  const double a = col[k];
  const double b = col[k + 1];
  const double r = std::hypot(a, b);
  double c = 1.0;
  double s = 0.0;
  if (r != 0.0) {
    c = a / r;
    s = b / r;
  }
  col[k] = r;
  col.pop_back();
  cos_.push_back(c);
  sin_.push_back(s);
  g_.push_back(-s * g_[k]);
  g_[k] = c * g_[k];
  r_cols_.push_back(std::move(col));
}

double GivensLeastSquares::residual_norm() const { return std::abs(g_.back()); }

DenseVector GivensLeastSquares::solve() const {
  const std::size_t k = columns();
  DenseVector y(k);
  for (std::size_t ii = k; ii-- > 0;) {
    double s = g_[ii];
    for (std::size_t j = ii + 1; j < k; ++j) s -= r_cols_[j][ii] * y[j];
    const double d = r_cols_[ii][ii];
    if (d == 0.0) {
      throw NumericalError(
          "Hessenberg least squares is rank-deficient (zero diagonal after "
          "Givens rotations at column " +
          std::to_string(ii) + "); use the PinvTruncated strategy");
    }
    y[ii] = s / d;
  }
  return y;
}

DenseVector solve_hessenberg_givens(const DenseMatrix& hess, double beta) {
  if (hess.rows() != hess.cols() + 1) {
    throw DimensionError("solve_hessenberg_givens: expected (k+1) x k");
  }
  GivensLeastSquares ls(beta);
  for (std::size_t j = 0; j < hess.cols(); ++j) {
    for (std::size_t i = j + 2; i < hess.rows(); ++i) {
      if (hess(i, j) != 0.0) {
        throw DimensionError("solve_hessenberg_givens: matrix is not upper Hessenberg");
      }
    }
    ls.append_column(hess.col(j).subspan(0, j + 2));
  }
  return ls.solve();
}

HessenbergPinvSolution solve_hessenberg_pinv(const DenseMatrix& hess, double beta,
                                             const PinvPolicy& policy) {
  if (hess.rows() != hess.cols() + 1) {
    throw DimensionError("solve_hessenberg_pinv: expected (k+1) x k");
  }
  DenseVector rhs(hess.rows());
  rhs[0] = beta;
  PinvSolveResult r = pinv_solve(hess, rhs, policy);
  return {std::move(r.x), r.rank_used, r.tol_used, std::move(r.sigma)};
}

// ---------------------------------------------------------------------------
// Configuration and history

std::string HessSolveStrategy::describe() const {
  return kind == Kind::GivensQR ? "givens" : "pinv:" + policy.describe();
}

void SolveConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("SolveConfig: max_iter must be >= 1");
  if (!(breakdown_tol >= 0.0)) {
    throw std::invalid_argument("SolveConfig: breakdown_tol must be >= 0");
  }
  if (!(stop_tol >= 0.0)) throw std::invalid_argument("SolveConfig: stop_tol must be >= 0");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::Breakdown: return "breakdown";
    case Termination::MaxIter: return "max_iter";
  }
  return "unknown";
}

double ConvergenceHistory::min_rel_res() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : records) m = std::min(m, r.rel_res);
  return m;
}

double ConvergenceHistory::min_at_rel_res() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : records) m = std::min(m, r.at_rel_res);
  return m;
}

double ConvergenceHistory::min_metric(StopMetric m) const {
  return m == StopMetric::RelRes ? min_rel_res() : min_at_rel_res();
}

// ---------------------------------------------------------------------------
// GMRES driver

ConvergenceHistory gmres(const LinearOperator& op, const DenseVector& b,
                         const DenseVector& x0, const SolveConfig& config,
                         const IterateHooks& hooks) {
  config.validate();
  const std::size_t n = op.size();
  if (b.size() != n || x0.size() != n) {
    throw DimensionError("gmres: operator is " + std::to_string(n) + "x" +
                         std::to_string(n) + " but b has " + std::to_string(b.size()) +
                         " and x0 has " + std::to_string(x0.size()) + " entries");
  }

  std::function<ResidualMetrics(const DenseVector&)> measure = hooks.metrics;
  if (!measure) {
    if (!op.has_transpose()) {
      throw std::invalid_argument(
          "gmres: operator lacks a transpose; supply IterateHooks::metrics");
    }
    const double b_norm = b.norm2();
    const double atb_norm = op.apply_transpose(b).norm2();
    measure = [&op, &b, b_norm, atb_norm](const DenseVector& x) {
      const DenseVector r = b - op.apply(x);
      ResidualMetrics m;
      m.degenerate = b_norm == 0.0 || atb_norm == 0.0;
      m.rel_res = b_norm == 0.0 ? 0.0 : r.norm2() / b_norm;
      m.at_rel_res = atb_norm == 0.0 ? 0.0 : op.apply_transpose(r).norm2() / atb_norm;
      return m;
    };
  }
  auto metric_of = [&config](const ResidualMetrics& m) {
    return config.stop_metric == StopMetric::RelRes ? m.rel_res : m.at_rel_res;
  };

  ConvergenceHistory history;
  history.final_x = x0;

  const DenseVector r0 = b - op.apply(x0);
  if (r0.norm2() == 0.0) {
    history.termination = Termination::Converged;
    return history;
  }
  const ResidualMetrics initial = measure(x0);
  history.degenerate_denominator = initial.degenerate;
  if (metric_of(initial) <= config.stop_tol) {
    history.termination = Termination::Converged;
    return history;
  }

  const double scale = std::max(1.0, op.frobenius_norm().value_or(1.0));
  const double breakdown_threshold = config.breakdown_tol * scale;
  const bool use_pinv = config.strategy.kind == HessSolveStrategy::Kind::PinvTruncated;

  ArnoldiState state(r0);
  GivensLeastSquares givens(state.beta());
  history.termination = Termination::MaxIter;

  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    const ArnoldiStepResult step = arnoldi_step(op, state, config.reorthogonalize);
    const auto column = state.hessenberg_column(iter - 1);
    if (!all_finite(column)) {
      std::ostringstream msg;
      msg << "gmres: non-finite Hessenberg entry at iteration " << iter;
      throw NumericalError(msg.str());
    }

    IterateRecord rec;
    rec.iter = iter;
    rec.h_subdiag = step.h_next;
    rec.sigma_max_h = kNaN;
    rec.sigma_min_h = kNaN;

    DenseVector y;
    givens.append_column(column);
    if (use_pinv) {
      HessenbergPinvSolution sol =
          solve_hessenberg_pinv(state.hessenberg(), state.beta(), config.strategy.policy);
      y = std::move(sol.y);
      rec.rank_used = sol.rank_used;
      rec.tol_used = sol.tol_used;
      rec.sigma_max_h = sol.sigma[0];
      rec.sigma_min_h = sol.sigma[sol.sigma.size() - 1];
    } else {
      rec.rank_used = iter;
      try {
        y = givens.solve();
      } catch (const NumericalError&) {
        // Exactly singular triangle: fall back to the minimum-norm solution.
        HessenbergPinvSolution sol = solve_hessenberg_pinv(
            state.hessenberg(), state.beta(), PinvPolicy::no_truncation());
        y = std::move(sol.y);
        rec.rank_used = sol.rank_used;
      }
      if (config.record_hessenberg_spectrum) {
        const DenseVector s = singular_values(state.hessenberg());
        rec.sigma_max_h = s[0];
        rec.sigma_min_h = s[s.size() - 1];
      }
    }

    DenseVector x = x0;
    for (std::size_t i = 0; i < y.size(); ++i) axpy(y[i], state.basis()[i].span(), x.span());
    if (!all_finite(x.span())) {
      std::ostringstream msg;
      msg << "gmres: non-finite iterate at iteration " << iter;
      throw NumericalError(msg.str());
    }

    const ResidualMetrics m = measure(x);
    rec.rel_res = m.rel_res;
    rec.at_rel_res = m.at_rel_res;
    history.degenerate_denominator = history.degenerate_denominator || m.degenerate;
    history.records.push_back(rec);
    if (hooks.observe) hooks.observe(iter, x);
    history.final_x = std::move(x);

    if (metric_of(m) <= config.stop_tol) {
      history.termination = Termination::Converged;
      break;
    }
    if (step.h_next <= breakdown_threshold) {
      history.termination = Termination::Breakdown;
      break;
    }
  }
  return history;
}

}  // namespace rpgmres
