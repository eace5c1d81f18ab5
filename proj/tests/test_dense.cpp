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

#include "rpgmres/dense.hpp"
#include "rpgmres/errors.hpp"

namespace rpgmres {
namespace {

TEST(DenseVector, RejectsNonFiniteEntries) {
  EXPECT_THROW(DenseVector({1.0, std::numeric_limits<double>::quiet_NaN()}), NumericalError);
  EXPECT_THROW(DenseVector(3, std::numeric_limits<double>::infinity()), NumericalError);
}

TEST(DenseVector, Arithmetic) {
  DenseVector a{1.0, 2.0, 3.0};
  const DenseVector b{4.0, 5.0, 6.0};
  EXPECT_EQ(a + b, (DenseVector{5.0, 7.0, 9.0}));
  EXPECT_EQ(b - a, (DenseVector{3.0, 3.0, 3.0}));
  EXPECT_EQ(2.0 * a, (DenseVector{2.0, 4.0, 6.0}));
  EXPECT_DOUBLE_EQ(dot(a.span(), b.span()), 32.0);
  axpy(2.0, b.span(), a.span());
  EXPECT_EQ(a, (DenseVector{9.0, 12.0, 15.0}));
  EXPECT_THROW(a += DenseVector(2), DimensionError);
}

TEST(DenseVector, NormAvoidsOverflowAndUnderflow) {
  EXPECT_DOUBLE_EQ(DenseVector({3e200, 4e200}).norm2(), 5e200);
  EXPECT_DOUBLE_EQ(DenseVector({3e-200, 4e-200}).norm2(), 5e-200);
  EXPECT_EQ(DenseVector(4).norm2(), 0.0);
}

TEST(DenseMatrix, ColumnMajorLayout) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(a.rows(), 2u);
  EXPECT_EQ(a.cols(), 3u);
  EXPECT_EQ(a.values(), (std::vector<double>{1, 4, 2, 5, 3, 6}));
  EXPECT_EQ(a(1, 2), 6.0);
  EXPECT_THROW(DenseMatrix(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
}

TEST(DenseMatrix, Products) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
  const DenseVector x{1.0, -1.0};
  EXPECT_EQ(a * x, (DenseVector{-1.0, -1.0, -1.0}));
  EXPECT_EQ(multiply_transpose(a, DenseVector{1.0, 1.0, 1.0}), (DenseVector{9.0, 12.0}));
  EXPECT_EQ(multiply_transpose(a, a), a.transpose() * a);
  EXPECT_EQ(a.transpose() * a, DenseMatrix::from_rows({{35, 44}, {44, 56}}));
  EXPECT_THROW(a * a, DimensionError);
  EXPECT_EQ(scale_columns(a, std::vector<double>{2.0, 0.5}),
            DenseMatrix::from_rows({{2, 1}, {6, 2}, {10, 3}}));
}

TEST(DenseMatrix, BlocksAndConcatenation) {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  EXPECT_EQ(a.block(1, 1, 2, 2), DenseMatrix::from_rows({{5, 6}, {8, 9}}));
  const DenseMatrix h = hcat(DenseMatrix::identity(2), DenseMatrix::diagonal({3.0, 4.0}));
  EXPECT_EQ(h, DenseMatrix::from_rows({{1, 0, 3, 0}, {0, 1, 0, 4}}));
  EXPECT_EQ(h.count_nonzeros(), 4u);
  EXPECT_DOUBLE_EQ(h.frobenius_norm(), std::sqrt(27.0));
}

}  // namespace
}  // namespace rpgmres
