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
#include <initializer_list>
#include <span>
#include <vector>

#include "rpgmres/errors.hpp"

namespace rpgmres {

/// Real vector of fixed length. Entries are checked for finiteness when
/// constructed from data.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t n, double fill = 0.0);
  explicit DenseVector(std::vector<double> values);
  DenseVector(std::initializer_list<double> values);

  static DenseVector unit(std::size_t n, std::size_t k);

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> span() noexcept { return data_; }
  std::span<const double> span() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  double norm2() const;

  DenseVector& operator+=(const DenseVector& other);
  DenseVector& operator-=(const DenseVector& other);
  DenseVector& operator*=(double s);

  bool operator==(const DenseVector&) const = default;

 private:
  std::vector<double> data_;
};

DenseVector operator+(DenseVector a, const DenseVector& b);
DenseVector operator-(DenseVector a, const DenseVector& b);
DenseVector operator*(double s, DenseVector v);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// Column-major real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  /// `column_major` must hold rows*cols finite values.
  DenseMatrix(std::size_t rows, std::size_t cols,
              std::vector<double> column_major);

  /// Row-major nested initializer, convenient for small fixtures.
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix diagonal(std::initializer_list<double> diag);
  /// Columns are the given vectors, which must share one length.
  static DenseMatrix from_columns(std::span<const DenseVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[j * rows_ + i];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[j * rows_ + i];
  }

  std::span<double> col(std::size_t j) {
    return {data_.data() + j * rows_, rows_};
  }
  std::span<const double> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  DenseVector column(std::size_t j) const;

  const std::vector<double>& values() const noexcept { return data_; }

  DenseMatrix transpose() const;
  double frobenius_norm() const;
  std::size_t count_nonzeros() const;

  /// Leading `r` rows and `c` columns.
  DenseMatrix block(std::size_t row0, std::size_t col0, std::size_t r,
                    std::size_t c) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseVector operator*(const DenseMatrix& a, const DenseVector& x);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);

/// A^T x without forming the transpose.
DenseVector multiply_transpose(const DenseMatrix& a, const DenseVector& x);
/// A^T B without forming the transpose.
DenseMatrix multiply_transpose(const DenseMatrix& a, const DenseMatrix& b);
/// A * diag(d): column j of A scaled by d[j].
DenseMatrix scale_columns(const DenseMatrix& a, std::span<const double> d);
/// Horizontal concatenation [A | B].
DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace rpgmres
