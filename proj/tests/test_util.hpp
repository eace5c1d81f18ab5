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

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "rpgmres/dense.hpp"

namespace rpgmres::testing {

inline DenseMatrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  DenseMatrix a(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) a(i, j) = d(gen);
  }
  return a;
}

inline DenseVector random_vector(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = d(gen);
  return v;
}

/// n x n matrix of exact rank r built as X Y^T.
inline DenseMatrix random_rank(std::size_t n, std::size_t r, std::mt19937_64& gen) {
  const DenseMatrix x = random_matrix(n, r, gen);
  const DenseMatrix y = random_matrix(n, r, gen);
  return x * y.transpose();
}

inline Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) e(i, j) = a(i, j);
  }
  return e;
}

inline Eigen::VectorXd to_eigen(const DenseVector& v) {
  Eigen::VectorXd e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e(i) = v[i];
  return e;
}

inline DenseMatrix from_eigen(const Eigen::MatrixXd& e) {
  DenseMatrix a(e.rows(), e.cols());
  for (Eigen::Index j = 0; j < e.cols(); ++j) {
    for (Eigen::Index i = 0; i < e.rows(); ++i) a(i, j) = e(i, j);
  }
  return a;
}

/// Independent truncated pseudoinverse: keeps singular values >= tol.
inline Eigen::MatrixXd eigen_pinv(const Eigen::MatrixXd& b, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(b.cols(), b.rows());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 0.0 && s(i) >= tol) {
      p += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).transpose();
    }
  }
  return p;
}

/// Orthogonal projector onto the span of left singular vectors with
/// sigma > tol, from Eigen's SVD.
inline Eigen::MatrixXd eigen_range_projector(const Eigen::MatrixXd& a, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(a.rows(), a.rows());
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) p += svd.matrixU().col(i) * svd.matrixU().col(i).transpose();
  }
  return p;
}

}  // namespace rpgmres::testing
