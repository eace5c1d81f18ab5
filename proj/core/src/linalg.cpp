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

#include "rpgmres/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rpgmres {

namespace {

constexpr int kMaxSweeps = 80;

/// Columns of `w` mutually orthogonal, B = W V^T with V orthogonal.
struct JacobiFactors {
  DenseMatrix w;
  DenseMatrix v;
};

void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Requires b.rows() >= b.cols().
JacobiFactors one_sided_jacobi(const DenseMatrix& b, bool want_v) {
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  JacobiFactors f{b, want_v ? DenseMatrix::identity(n) : DenseMatrix()};
  const double tol = static_cast<double>(std::max<std::size_t>(m, 1)) *
                     std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto wp = f.w.col(p);
        auto wq = f.w.col(q);
        const double alpha = dot(wp, wp);
        const double beta = dot(wq, wq);
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = dot(wp, wq);
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        double t;
        if (std::abs(zeta) > 1e150) {
          t = 0.5 / zeta;
        } else {
          t = std::copysign(1.0, zeta) /
              (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(wp, wq, c, s);
        if (want_v) rotate(f.v.col(p), f.v.col(q), c, s);
      }
    }
    if (!rotated) return f;
  }
  std::ostringstream msg;
  msg << "svd: one-sided Jacobi did not converge in " << kMaxSweeps
      << " sweeps for a " << m << "x" << n << " matrix";
  throw NumericalError(msg.str());
}

/// Thin factors B = U_t diag(sigma) V^T, columns sorted by sigma. Columns of
/// U_t belonging to zero singular values are left zero.
struct ThinSvd {
  DenseMatrix u;      // m x min(m,n)
  DenseVector sigma;  // min(m,n)
  DenseMatrix v;      // n x min(m,n) (or n x n when m >= n)
};

ThinSvd thin_svd(const DenseMatrix& b) {
  if (b.rows() < b.cols()) {
    ThinSvd t = thin_svd(b.transpose());
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  JacobiFactors f = one_sided_jacobi(b, true);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm2(f.w.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t c) { return norms[a] > norms[c]; });

  ThinSvd out{DenseMatrix(m, n), DenseVector(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = norms[j];
    std::copy(f.v.col(j).begin(), f.v.col(j).end(), out.v.col(k).begin());
    if (norms[j] > 0.0) {
      auto src = f.w.col(j);
      auto dst = out.u.col(k);
      for (std::size_t i = 0; i < m; ++i) dst[i] = src[i] / norms[j];
    }
  }
  return out;
}

/// Extends the first `have` orthonormal columns of `q` (m x m) to a full
/// orthonormal basis, choosing at each step the coordinate vector with the
/// largest component outside the current span.
void complete_basis(DenseMatrix& q, std::size_t have) {
  const std::size_t m = q.rows();
  std::vector<double> cand(m);
  auto project_out = [&](std::span<double> x, std::size_t count) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < count; ++k) {
        const double h = dot(q.col(k), x);
        axpy(-h, q.col(k), x);
      }
    }
  };
  for (std::size_t k = have; k < m; ++k) {
    double best_norm = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::fill(cand.begin(), cand.end(), 0.0);
      cand[i] = 1.0;
      project_out(cand, k);
      const double nrm = norm2(cand);
      if (nrm > best_norm + 1e-14) {
        best_norm = nrm;
        best = i;
      }
    }
    std::fill(cand.begin(), cand.end(), 0.0);
    cand[best] = 1.0;
    project_out(cand, k);
    const double nrm = norm2(cand);
    auto dst = q.col(k);
    for (std::size_t i = 0; i < m; ++i) dst[i] = cand[i] / nrm;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

PinvPolicy PinvPolicy::relative_to_sigma1(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("PinvPolicy: alpha must lie in (0,1)");
  }
  return PinvPolicy(Kind::RelativeToSigma1, alpha);
}

PinvPolicy PinvPolicy::absolute(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("PinvPolicy: tolerance must be finite and >= 0");
  }
  return PinvPolicy(Kind::Absolute, tol);
}

double PinvPolicy::resolve(double sigma1, std::size_t m, std::size_t n) const {
  switch (kind_) {
    case Kind::DefaultNumericalRank:
      return static_cast<double>(std::max(m, n)) * ulp(sigma1);
    case Kind::RelativeToSigma1:
      return param_ * sigma1;
    case Kind::Absolute:
      return param_;
    case Kind::NoTruncation:
      return 0.0;
  }
  return 0.0;
}

std::string PinvPolicy::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::DefaultNumericalRank: os << "default"; break;
    case Kind::RelativeToSigma1: os << "relative(" << param_ << ")"; break;
    case Kind::Absolute: os << "absolute(" << param_ << ")"; break;
    case Kind::NoTruncation: os << "none"; break;
  }
  return os.str();
}

SvdResult svd(const DenseMatrix& b) {
  if (b.rows() < b.cols()) {
    SvdResult t = svd(b.transpose());
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  ThinSvd t = thin_svd(b);
  DenseMatrix u(m, m);
  std::size_t have = 0;
  for (std::size_t k = 0; k < n && t.sigma[k] > 0.0; ++k, ++have) {
    std::copy(t.u.col(k).begin(), t.u.col(k).end(), u.col(k).begin());
  }
  complete_basis(u, have);
  return {std::move(u), std::move(t.sigma), std::move(t.v)};
}

DenseVector singular_values(const DenseMatrix& b) {
  JacobiFactors f = b.rows() >= b.cols() ? one_sided_jacobi(b, false)
                                         : one_sided_jacobi(b.transpose(), false);
  std::vector<double> s(f.w.cols());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = norm2(f.w.col(j));
  std::sort(s.begin(), s.end(), std::greater<>());
  return DenseVector(std::move(s));
}

PinvResult pinv_truncated(const DenseMatrix& b, const PinvPolicy& policy) {
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  PinvResult out{DenseMatrix(n, m), 0, 0.0};
  if (m == 0 || n == 0) return out;
  ThinSvd t = thin_svd(b);
  out.tol_used = policy.resolve(t.sigma[0], m, n);
  for (std::size_t k = 0; k < t.sigma.size(); ++k) {
    const double s = t.sigma[k];
    if (!(s > 0.0) || s < out.tol_used) break;
    ++out.rank_used;
    // pinv += v_k u_k^T / s
    for (std::size_t j = 0; j < m; ++j) {
      const double ujk = t.u(j, k) / s;
      if (ujk != 0.0) axpy(ujk, t.v.col(k), out.pinv.col(j));
    }
  }
  return out;
}

PinvSolveResult pinv_solve(const DenseMatrix& b, const DenseVector& rhs,
                           const PinvPolicy& policy) {
  if (rhs.size() != b.rows()) throw DimensionError("pinv_solve: rhs length mismatch");
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  PinvSolveResult out{DenseVector(n), 0, 0.0, DenseVector()};
  if (m == 0 || n == 0) return out;
  ThinSvd t = thin_svd(b);
  out.tol_used = policy.resolve(t.sigma[0], m, n);
  for (std::size_t k = 0; k < t.sigma.size(); ++k) {
    const double s = t.sigma[k];
    if (!(s > 0.0) || s < out.tol_used) break;
    ++out.rank_used;
    const double coef = dot(t.u.col(k), rhs.span()) / s;
    axpy(coef, t.v.col(k), out.x.span());
  }
  out.sigma = std::move(t.sigma);
  return out;
}

double ulp(double x) {
  if (!std::isfinite(x)) throw std::domain_error("ulp: argument must be finite");
  const double ax = std::abs(x);
  const double up = std::nextafter(ax, std::numeric_limits<double>::infinity());
  if (std::isinf(up)) return ax - std::nextafter(ax, 0.0);
  return up - ax;
}

std::size_t rank_with_tol(const DenseMatrix& b, double tol) {
  if (b.rows() == 0 || b.cols() == 0) return 0;
  const DenseVector s = singular_values(b);
  return static_cast<std::size_t>(std::count_if(
      s.span().begin(), s.span().end(), [tol](double v) { return v > tol; }));
}

double default_rank_tolerance(const DenseMatrix& b) {
  if (b.rows() == 0 || b.cols() == 0) return 0.0;
  const DenseVector s = singular_values(b);
  return static_cast<double>(std::max(b.rows(), b.cols())) * ulp(s[0]);
}

double orthonormality_defect(const DenseMatrix& v) {
  DenseMatrix g = multiply_transpose(v, v);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.frobenius_norm();
}

}  // namespace rpgmres
