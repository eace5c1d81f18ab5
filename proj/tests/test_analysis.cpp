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
#include <limits>
#include <random>

#include "rpgmres/analysis.hpp"
#include "rpgmres/linalg.hpp"
#include "rpgmres/precond.hpp"
#include "rpgmres/problems.hpp"
#include "test_util.hpp"

namespace rpgmres {
namespace {

using testing::random_matrix;
using testing::random_rank;
using testing::random_vector;

const DenseMatrix kNilpotent = DenseMatrix::from_rows({{0, 1}, {0, 0}});

TEST(MinNormLsq, Examples) {
  const DenseVector b{1.0, -2.0, 3.0};
  EXPECT_EQ(min_norm_lsq(DenseMatrix::identity(3), b, 1e-12), b);
  const DenseVector x0 = min_norm_lsq(kNilpotent, DenseVector::unit(2, 1), 1e-12);
  EXPECT_EQ(x0, DenseVector(2));
  EXPECT_EQ((DenseVector::unit(2, 1) - kNilpotent * x0).norm2(), 1.0);
  const DenseVector x1 = min_norm_lsq(kNilpotent, DenseVector::unit(2, 0), 1e-12);
  EXPECT_EQ(x1, (DenseVector{0.0, 1.0}));
}

TEST(MatrixIndex, Examples) {
  EXPECT_EQ(matrix_index(DenseMatrix::identity(4)), 0u);
  EXPECT_EQ(matrix_index(kNilpotent), 2u);
  EXPECT_EQ(matrix_index(gen_gp_matrix(GpParams::gp_default())), 1u);
  EXPECT_EQ(matrix_index(DenseMatrix::diagonal({1.0, 0.0})), 1u);
  EXPECT_EQ(matrix_index(DenseMatrix(3, 3)), 1u);
  EXPECT_EQ(matrix_index(jordan_block(4, 0.0)), 4u);
}

// Exact-rank oracle: ranks of explicit integer powers of a nilpotent matrix
// with known Jordan structure.
TEST(MatrixIndex, JordanStructures) {
  for (std::size_t k = 1; k <= 6; ++k) {
    DenseMatrix a(8, 8);
    for (std::size_t i = 0; i + 1 < k; ++i) a(i, i + 1) = 1.0;
    a(7, 7) = 3.0;
    EXPECT_EQ(matrix_index(a), k == 1 ? 1u : k) << "k=" << k;
  }
}

TEST(RangeSymmetry, Examples) {
  std::mt19937_64 gen(7);
  const DenseMatrix m = random_rank(9, 5, gen);
  EXPECT_TRUE(is_range_symmetric(m + m.transpose()));
  EXPECT_FALSE(is_range_symmetric(kNilpotent));
  EXPECT_FALSE(is_range_symmetric(gen_gp_matrix(GpParams::gp_default())));
  EXPECT_TRUE(is_range_symmetric(DenseMatrix::identity(5)));
}

TEST(ResidualMetrics, Examples) {
  const DenseMatrix a = DenseMatrix::diagonal({2.0, 4.0});
  const DenseVector b{2.0, 4.0};
  const auto exact = residual_metrics(a, b, DenseVector{1.0, 1.0});
  EXPECT_EQ(exact.rel_res, 0.0);
  EXPECT_EQ(exact.at_rel_res, 0.0);
  const auto zero = residual_metrics(a, b, DenseVector(2));
  EXPECT_EQ(zero.rel_res, 1.0);
  EXPECT_EQ(zero.at_rel_res, 1.0);
  EXPECT_FALSE(zero.degenerate);
  const auto guard = residual_metrics(DenseMatrix::diagonal({1.0, 0.0}), DenseVector::unit(2, 1),
                                      DenseVector(2));
  EXPECT_EQ(guard.rel_res, 1.0);
  EXPECT_EQ(guard.at_rel_res, 0.0);
  EXPECT_TRUE(guard.degenerate);
}

TEST(TheoremBound, Examples) {
  const auto flat = theorem_bound({3.0, 3.0, 5.0, 2.0, 1.0}, 1);
  EXPECT_EQ(flat.atr_bound, 0.0);
  EXPECT_EQ(flat.res_bound, 0.0);
  const auto k0 = theorem_bound({2.0, 1.0, 7.0, 1.5, 0.5}, 0);
  EXPECT_EQ(k0.atr_bound, 2.0 * 7.0 * 1.5);
  EXPECT_EQ(k0.res_bound, 1.0);
  const auto k3 = theorem_bound({2.0, 1.0, 2.0, 1.0, 1.0}, 3);
  EXPECT_NEAR(k3.atr_bound, 4.0 / 27.0, 1e-16);
  EXPECT_NEAR(k3.res_bound, 2.0 / 27.0, 1e-16);
}

TEST(TheoremBound, RejectsInvalidInputs) {
  EXPECT_THROW(theorem_bound({1.0, 0.0, 1.0, 1.0, 1.0}, 1), std::invalid_argument);
  EXPECT_THROW(theorem_bound({1.0, 2.0, 1.0, 1.0, 1.0}, 1), std::invalid_argument);
  EXPECT_THROW(theorem_bound({2.0, 1.0, 0.5, 1.0, 1.0}, 1), std::invalid_argument);
  EXPECT_THROW(theorem_bound({2.0, 1.0, 1.0, -1.0, 1.0}, 1), std::invalid_argument);
}

TEST(Classify, Examples) {
  const auto c = classify(kNilpotent);
  EXPECT_EQ(c.rank, 1u);
  EXPECT_EQ(c.index, 2u);
  EXPECT_FALSE(c.is_ep);
  EXPECT_EQ(c.sigma_max, 1.0);
  EXPECT_EQ(c.kappa, 1.0);
  const auto z = classify(DenseMatrix(3, 3));
  EXPECT_EQ(z.rank, 0u);
  EXPECT_TRUE(std::isinf(z.kappa));
}

TEST(AnalysisProperty, OracleOptimality) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<std::size_t> size(5, 50);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = size(gen);
    const std::size_t r = std::max<std::size_t>(1, n - 1 - n * static_cast<std::size_t>(trial % 4) / 10);
    const DenseMatrix a = random_rank(n, r, gen);
    const DenseVector b = random_vector(n, gen);
    const double tol = static_cast<double>(n) * ulp(singular_values(a)[0]);
    const DenseVector x = min_norm_lsq(a, b, tol);
    const DenseVector res = b - a * x;
    ASSERT_LE(multiply_transpose(a, res).norm2(), 1e-10 * a.frobenius_norm() * b.norm2());
    const double base = res.norm2();
    for (int p = 0; p < 20; ++p) {
      DenseVector d = random_vector(n, gen);
      d *= 1.0 / d.norm2();
      const DenseVector xp = x + 1e-4 * d;
      ASSERT_GE((b - a * xp).norm2(), base - 1e-12) << "trial " << trial;
    }
  }
}

TEST(AnalysisProperty, AgreesWithEigenOracle) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + static_cast<std::size_t>(trial);
    const DenseMatrix a = random_rank(n, n / 2 + 1, gen);
    const DenseVector b = random_vector(n, gen);
    const double tol = static_cast<double>(n) * ulp(singular_values(a)[0]);
    const Eigen::VectorXd xe = testing::eigen_pinv(testing::to_eigen(a), tol) * testing::to_eigen(b);
    const DenseVector x = min_norm_lsq(a, b, tol);
    ASSERT_LE((testing::to_eigen(x) - xe).norm(), 1e-9 * std::max(1.0, xe.norm()));
  }
}

TEST(AnalysisProperty, ProjectionMatchesEigenProjector) {
  const DenseMatrix a = gen_gp_matrix(GpParams::gp_default());
  const DenseVector v = seeded_uniform(128, 4);
  const double tol = 128.0 * ulp(singular_values(a)[0]);
  const Eigen::VectorXd pe =
      testing::eigen_range_projector(testing::to_eigen(a), tol) * testing::to_eigen(v);
  EXPECT_LE((testing::to_eigen(project_onto_range(a, v, tol)) - pe).norm(), 1e-12);
}

TEST(AnalysisProperty, ClassifierConsistency) {
  std::mt19937_64 gen(10);
  std::vector<DenseMatrix> mats = {gen_gp_matrix(GpParams::gp_default()),
                                   gen_index2_matrix(GpParams::index2_default()),
                                   gen_index2_matrix({6.0, 6.0}), kNilpotent,
                                   DenseMatrix::identity(4)};
  for (int i = 0; i < 10; ++i) {
    const DenseMatrix m = random_rank(12, 7, gen);
    mats.push_back(m);
    mats.push_back(m * m.transpose());
  }
  for (const auto& a : mats) {
    if (is_range_symmetric(a)) {
      EXPECT_LE(matrix_index(a), 1u);
    }
  }
}

TEST(AnalysisProperty, PreconditionedProductIsEp) {
  for (const DenseMatrix& a : {gen_gp_matrix(GpParams::gp_default()),
                               gen_index2_matrix(GpParams::index2_default())}) {
    const DenseMatrix ab = a * preconditioner_matrix(a, PrecondKind::cat(build_jacobi_spd(a)));
    EXPECT_LE(matrix_index(ab), 1u);
    EXPECT_TRUE(is_range_symmetric(ab));
  }
}

struct BoundCase {
  ProblemFamily family;
  GpParams params;
  RhsMode rhs;
  bool reorth;
};

std::vector<BoundCase> bound_cases() {
  return {{ProblemFamily::Gp, GpParams::gp_default(), RhsMode::inconsistent(), true},
          {ProblemFamily::Gp, GpParams::gp_default(), RhsMode::consistent(), true},
          {ProblemFamily::Index2, GpParams::index2_default(), RhsMode::inconsistent(), false},
          {ProblemFamily::Index2, GpParams::index2_default(), RhsMode::consistent(), false}};
}

// ||A^T r_k|| against the convergence bound for B = C A^T, checked until
// at_rel_res first drops below 1e-12.
TEST(AnalysisProperty, AtResidualBoundHolds) {
  for (const auto& bc : bound_cases()) {
    const ProblemInstance p = make_problem(bc.family, bc.params, bc.rhs);
    const DenseVector c = build_jacobi_spd(p.a);
    const BoundInputs in = bound_inputs_for(p.a, c, p.b);
    SolveConfig cfg;
    cfg.reorthogonalize = bc.reorth;
    cfg.max_iter = 128;
    cfg.stop_tol = 0.0;
    cfg.stop_metric = StopMetric::AtRelRes;
    cfg.strategy = HessSolveStrategy::pinv(PinvPolicy::relative_to_sigma1(1e-8));
    const auto h = ab_gmres(p.a, PrecondKind::cat(c), p.b, DenseVector(128), cfg);
    const double atb = multiply_transpose(p.a, p.b).norm2();
    for (const auto& rec : h.records) {
      if (rec.at_rel_res < 1e-12) break;
      const double bound = theorem_bound(in, rec.iter).atr_bound;
      ASSERT_LE(rec.at_rel_res * atb, bound * (1.0 + 1e-6))
          << to_string(bc.family) << " " << bc.rhs.describe() << " k=" << rec.iter;
    }
  }
}

TEST(AnalysisProperty, RangeResidualBoundHolds) {
  for (const auto& bc : bound_cases()) {
    const ProblemInstance p = make_problem(bc.family, bc.params, bc.rhs);
    const DenseVector c = build_jacobi_spd(p.a);
    const BoundInputs in = bound_inputs_for(p.a, c, p.b);
    const double tol = 128.0 * ulp(singular_values(p.a)[0]);
    SolveConfig cfg;
    cfg.reorthogonalize = bc.reorth;
    cfg.max_iter = 128;
    cfg.stop_tol = 1e-12;
    cfg.stop_metric = StopMetric::AtRelRes;
    cfg.strategy = HessSolveStrategy::pinv(PinvPolicy::relative_to_sigma1(1e-8));
    std::size_t checked = 0;
    ab_gmres(p.a, PrecondKind::cat(c), p.b, DenseVector(128), cfg,
             [&](std::size_t k, const DenseVector& x) {
               const double rr = project_onto_range(p.a, p.b - p.a * x, tol).norm2();
               EXPECT_LE(rr, theorem_bound(in, k).res_bound * (1.0 + 1e-6))
                   << to_string(bc.family) << " k=" << k;
               ++checked;
             });
    EXPECT_GT(checked, 0u);
  }
}

}  // namespace
}  // namespace rpgmres
