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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rpgmres/errors.hpp"
#include "rpgmres/krylov.hpp"
#include "rpgmres/problems.hpp"
#include "test_util.hpp"

namespace rpgmres {
namespace {

using testing::random_matrix;
using testing::random_vector;

double arnoldi_residual(const DenseMatrix& a, const ArnoldiState& s) {
  const std::size_t k = s.steps();
  const DenseMatrix vk = s.basis_matrix(k);
  const DenseMatrix h = s.hessenberg();
  const std::size_t rows = std::min(h.rows(), s.basis().size());
  const DenseMatrix vk1 = s.basis_matrix(rows);
  return (a * vk - vk1 * h.block(0, 0, rows, k)).frobenius_norm();
}

TEST(ArnoldiStep, IdentityBreaksDownImmediately) {
  const LinearOperator op = LinearOperator::from_matrix(DenseMatrix::identity(3));
  ArnoldiState s(DenseVector::unit(3, 0));
  const ArnoldiStepResult r = arnoldi_step(op, s, false);
  EXPECT_TRUE(r.breakdown);
  EXPECT_EQ(r.h_next, 0.0);
  EXPECT_TRUE(s.broken_down());
  EXPECT_EQ(s.hessenberg(), DenseMatrix::from_rows({{1}, {0}}));
  EXPECT_EQ(s.basis().size(), 1u);
  EXPECT_THROW(arnoldi_step(op, s, false), std::logic_error);
}

TEST(ArnoldiStep, TwoByTwoDiagonal) {
  const LinearOperator op = LinearOperator::from_matrix(DenseMatrix::diagonal({2.0, 3.0}));
  ArnoldiState s(DenseVector{1.0, 1.0});
  const ArnoldiStepResult r = arnoldi_step(op, s, false);
  EXPECT_FALSE(r.breakdown);
  EXPECT_NEAR(s.hessenberg()(0, 0), 2.5, 1e-15);
  EXPECT_NEAR(r.h_next, 0.5, 1e-15);
  const DenseVector& v2 = s.basis()[1];
  EXPECT_NEAR(v2[0], -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v2[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ArnoldiStep, RejectsDimensionMismatch) {
  const LinearOperator op = LinearOperator::from_matrix(DenseMatrix::identity(3));
  ArnoldiState s(DenseVector{1.0, 1.0});
  EXPECT_THROW(arnoldi_step(op, s, false), DimensionError);
  EXPECT_THROW(ArnoldiState(DenseVector(3)), std::invalid_argument);
}

TEST(GramSchmidt, SecondPassRemovesResidualComponent) {
  std::mt19937_64 gen(4);
  const SvdResult q = svd(random_matrix(6, 2, gen));
  const std::vector<DenseVector> basis = {q.u.column(0), q.u.column(1)};
  DenseVector w = q.u.column(2);
  axpy(1e-10, basis[0].span(), w.span());
  const std::vector<double> h = gram_schmidt_pass(basis, w);
  EXPECT_NEAR(h[0], 1e-10, 1e-16);
  EXPECT_LE(std::abs(dot(w.span(), basis[0].span())), 1e-16 * w.norm2());
  EXPECT_LE(std::abs(dot(w.span(), basis[1].span())), 1e-16 * w.norm2());
}

TEST(Givens, Examples) {
  EXPECT_EQ(solve_hessenberg_givens(DenseMatrix::from_rows({{1}, {0}}), 2.0), DenseVector{2.0});
  const DenseVector y =
      solve_hessenberg_givens(DenseMatrix::from_rows({{1, 1}, {0, 1}, {0, 0}}), 1.0);
  EXPECT_NEAR(y[0], 1.0, 1e-15);
  EXPECT_NEAR(y[1], 0.0, 1e-15);
}

TEST(Givens, RankDeficientThrows) {
  try {
    solve_hessenberg_givens(DenseMatrix::from_rows({{0}, {0}}), 1.0);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("PinvTruncated"), std::string::npos);
  }
}

TEST(Givens, IncrementalResidualMatchesDirect) {
  std::mt19937_64 gen(12);
  DenseMatrix h = random_matrix(8, 7, gen);
  for (std::size_t j = 0; j < 7; ++j) {
    for (std::size_t i = j + 2; i < 8; ++i) h(i, j) = 0.0;
  }
  GivensLeastSquares ls(1.5);
  for (std::size_t j = 0; j < 7; ++j) ls.append_column(h.col(j).subspan(0, j + 2));
  const DenseVector y = ls.solve();
  DenseVector rhs(8);
  rhs[0] = 1.5;
  EXPECT_NEAR(ls.residual_norm(), (rhs - h * y).norm2(), 1e-13);
}

TEST(HessenbergPinv, Examples) {
  const auto r = solve_hessenberg_pinv(DenseMatrix::from_rows({{1}, {0}}), 2.0,
                                       PinvPolicy::relative_to_sigma1(1e-8));
  EXPECT_EQ(r.y, DenseVector{2.0});
  EXPECT_EQ(r.rank_used, 1u);

  const DenseMatrix h = DenseMatrix::from_rows({{1, 0}, {0, 1e-12}, {0, 0}});
  const DenseVector rhs{1.0, 1e-6, 0.0};
  const auto trunc = pinv_solve(h, rhs, PinvPolicy::relative_to_sigma1(1e-8));
  EXPECT_EQ(trunc.x, (DenseVector{1.0, 0.0}));
  const auto full = pinv_solve(h, rhs, PinvPolicy::no_truncation());
  EXPECT_DOUBLE_EQ(full.x[0], 1.0);
  EXPECT_NEAR(full.x[1], 1e6, 1e-6);

  const auto zero = solve_hessenberg_pinv(DenseMatrix(3, 2), 1.0, PinvPolicy::no_truncation());
  EXPECT_EQ(zero.y, DenseVector(2));
}

TEST(Gmres, IdentityConvergesInOneStep) {
  const auto h = gmres(LinearOperator::from_matrix(DenseMatrix::identity(4)),
                       DenseVector::unit(4, 0), DenseVector(4), SolveConfig{});
  EXPECT_EQ(h.termination, Termination::Converged);
  ASSERT_EQ(h.iterations(), 1u);
  EXPECT_EQ(h.records[0].rel_res, 0.0);
  EXPECT_EQ(h.final_x, DenseVector::unit(4, 0));
}

TEST(Gmres, NilpotentBlockBreaksDownWithoutProgress) {
  const auto h = gmres(LinearOperator::from_matrix(DenseMatrix::from_rows({{0, 1}, {0, 0}})),
                       DenseVector::unit(2, 0), DenseVector(2), SolveConfig{});
  EXPECT_EQ(h.termination, Termination::Breakdown);
  ASSERT_EQ(h.iterations(), 1u);
  EXPECT_EQ(h.records[0].h_subdiag, 0.0);
  EXPECT_EQ(h.records[0].rel_res, 1.0);
  EXPECT_EQ(h.final_x, DenseVector(2));
}

TEST(Gmres, NonsingularDiagonal) {
  const auto h = gmres(LinearOperator::from_matrix(DenseMatrix::diagonal({2.0, 3.0})),
                       DenseVector{2.0, 3.0}, DenseVector(2), SolveConfig{});
  EXPECT_LE(h.iterations(), 2u);
  EXPECT_LE(h.records.back().rel_res, 1e-14);
  EXPECT_NEAR(h.final_x[0], 1.0, 1e-14);
  EXPECT_NEAR(h.final_x[1], 1.0, 1e-14);
}

TEST(Gmres, ZeroInitialResidualReturnsImmediately) {
  const DenseVector x0{1.0, 1.0};
  const auto h = gmres(LinearOperator::from_matrix(DenseMatrix::diagonal({2.0, 3.0})),
                       DenseVector{2.0, 3.0}, x0, SolveConfig{});
  EXPECT_EQ(h.termination, Termination::Converged);
  EXPECT_EQ(h.iterations(), 0u);
  EXPECT_EQ(h.final_x, x0);
}

TEST(Gmres, RejectsShapeMismatch) {
  EXPECT_THROW(gmres(LinearOperator::from_matrix(DenseMatrix::identity(3)), DenseVector(2),
                     DenseVector(3), SolveConfig{}),
               DimensionError);
}

TEST(Gmres, OverflowReportsIteration) {
  const LinearOperator op(
      2,
      [](const DenseVector& x) {
        DenseVector y(2);
        y[0] = 1e300 * x[0] * 1e10;
        y[1] = x[1];
        return y;
      },
      [](const DenseVector& x) { return x; });
  try {
    gmres(op, DenseVector{1.0, 1.0}, DenseVector(2), SolveConfig{});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("iteration 1"), std::string::npos) << e.what();
  } catch (const std::exception& e) {
    FAIL() << e.what();
  }
}

TEST(Gmres, RecordsSpectrumOnRequest) {
  SolveConfig c;
  c.record_hessenberg_spectrum = true;
  const auto h = gmres(LinearOperator::from_matrix(DenseMatrix::diagonal({1.0, 2.0, 4.0})),
                       DenseVector{1.0, 1.0, 1.0}, DenseVector(3), c);
  for (const auto& r : h.records) {
    EXPECT_GT(r.sigma_max_h, 0.0);
    EXPECT_LE(r.sigma_min_h, r.sigma_max_h);
  }
  const auto h2 = gmres(LinearOperator::from_matrix(DenseMatrix::diagonal({1.0, 2.0, 4.0})),
                        DenseVector{1.0, 1.0, 1.0}, DenseVector(3), SolveConfig{});
  EXPECT_TRUE(std::isnan(h2.records[0].sigma_max_h));
}

TEST(SolveConfig, Validation) {
  SolveConfig c;
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.max_iter = 1;
  c.stop_tol = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

// Arnoldi relation on the GP matrix at every step, with and without the
// second Gram-Schmidt pass.
TEST(ArnoldiProperty, RelationHoldsOnGpMatrix) {
  const DenseMatrix a = gen_gp_matrix(GpParams::gp_default());
  const LinearOperator op = LinearOperator::from_matrix(a);
  const DenseVector b = gen_rhs(a, RhsMode::inconsistent());
  for (bool reorth : {false, true}) {
    ArnoldiState s(b);
    for (std::size_t k = 1; k <= a.rows(); ++k) {
      const auto r = arnoldi_step(op, s, reorth);
      ASSERT_LE(arnoldi_residual(a, s), 1e-10 * a.frobenius_norm() * std::sqrt(double(k)))
          << "reorth=" << reorth << " k=" << k;
      if (r.breakdown || r.h_next <= 1e-15 * a.frobenius_norm()) break;
    }
  }
}

TEST(ArnoldiProperty, RelationHoldsOnRandomMatrix) {
  std::mt19937_64 gen(21);
  const DenseMatrix a = random_matrix(40, 40, gen);
  const LinearOperator op = LinearOperator::from_matrix(a);
  for (bool reorth : {false, true}) {
    ArnoldiState s(random_vector(40, gen));
    for (std::size_t k = 1; k <= 40; ++k) {
      arnoldi_step(op, s, reorth);
      ASSERT_LE(arnoldi_residual(a, s), 1e-10 * a.frobenius_norm() * std::sqrt(double(k)));
    }
  }
}

TEST(ArnoldiProperty, ReorthogonalizedBasisStaysOrthonormalOnGp) {
  const DenseMatrix a = gen_gp_matrix(GpParams::gp_default());
  const LinearOperator op = LinearOperator::from_matrix(a);
  for (const auto& mode : {RhsMode::inconsistent(), RhsMode::consistent()}) {
    ArnoldiState s(gen_rhs(a, mode));
    for (std::size_t k = 1; k <= a.rows(); ++k) {
      const auto r = arnoldi_step(op, s, true);
      if (r.breakdown) break;
      ASSERT_LE(orthonormality_defect(s.basis_matrix(s.basis().size())), 1e-12)
          << mode.describe() << " k=" << k;
    }
  }
}

TEST(GmresProperty, GivensAgreesWithUntruncatedPinv) {
  std::mt19937_64 gen(31);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 15;
    DenseMatrix h = random_matrix(k + 1, k, gen);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = j + 2; i < k + 1; ++i) h(i, j) = 0.0;
    }
    const DenseVector s = singular_values(h);
    if (s[k - 1] < 1e-8 * s[0]) continue;
    const DenseVector yg = solve_hessenberg_givens(h, 0.7);
    const DenseVector yp = solve_hessenberg_pinv(h, 0.7, PinvPolicy::no_truncation()).y;
    ASSERT_LE((yg - yp).norm2(), 1e-8 * yp.norm2());
    ++checked;
  }
  EXPECT_GT(checked, 80);
}

TEST(GmresProperty, GivensAgreesWithPinvInsideGmres) {
  std::mt19937_64 gen(32);
  const DenseMatrix a = random_matrix(25, 25, gen);
  const DenseVector b = random_vector(25, gen);
  SolveConfig cg;
  cg.stop_tol = 0.0;
  cg.record_hessenberg_spectrum = true;
  SolveConfig cp = cg;
  cp.strategy = HessSolveStrategy::pinv(PinvPolicy::no_truncation());
  const auto op = LinearOperator::from_matrix(a);
  const auto hg = gmres(op, b, DenseVector(25), cg);
  const auto hp = gmres(op, b, DenseVector(25), cp);
  ASSERT_EQ(hg.iterations(), hp.iterations());
  for (std::size_t i = 0; i < hg.iterations(); ++i) {
    if (hg.records[i].sigma_min_h < 1e-8 * hg.records[i].sigma_max_h) continue;
    EXPECT_NEAR(hg.records[i].rel_res, hp.records[i].rel_res, 1e-8);
  }
  EXPECT_LE((hg.final_x - hp.final_x).norm2(), 1e-8 * hp.final_x.norm2());
}

TEST(GmresProperty, ResidualMonotoneOnNonsingular) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 10 + 3 * trial;
    const DenseMatrix a = random_matrix(n, n, gen);
    SolveConfig c;
    c.stop_tol = 0.0;
    const auto h = gmres(LinearOperator::from_matrix(a), random_vector(n, gen), DenseVector(n), c);
    for (std::size_t i = 1; i < h.iterations(); ++i) {
      ASSERT_LE(h.records[i].rel_res, h.records[i - 1].rel_res * (1.0 + 1e-12) + 1e-15)
          << "n=" << n << " iter=" << h.records[i].iter;
    }
  }
}

TEST(GmresProperty, FiniteTerminationOnNonsingular) {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + 2 * trial;
    DenseMatrix a = random_matrix(n, n, gen);
    a = DenseMatrix::identity(n) + (1.0 / std::sqrt(double(n))) * a;
    const auto h = gmres(LinearOperator::from_matrix(a), random_vector(n, gen), DenseVector(n),
                         SolveConfig{});
    ASSERT_LE(h.iterations(), n);
    ASSERT_LE(h.records.back().rel_res, 1e-10) << "n=" << n;
  }
}

TEST(ConvergenceHistory, MinimaOfEmptyHistoryAreInfinite) {
  ConvergenceHistory h;
  EXPECT_TRUE(std::isinf(h.min_rel_res()));
  EXPECT_TRUE(std::isinf(h.min_metric(StopMetric::AtRelRes)));
}

}  // namespace
}  // namespace rpgmres
