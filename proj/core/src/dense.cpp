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

#include "rpgmres/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rpgmres {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NumericalError(std::string(what) + ": non-finite entry");
    }
  }
}

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

// ---------------------------------------------------------------------------
// DenseVector

DenseVector::DenseVector(std::size_t n, double fill) : data_(n, fill) {
  require_finite(data_, "DenseVector");
}

DenseVector::DenseVector(std::vector<double> values) : data_(std::move(values)) {
  require_finite(data_, "DenseVector");
}

DenseVector::DenseVector(std::initializer_list<double> values)
    : data_(values) {
  require_finite(data_, "DenseVector");
}

DenseVector DenseVector::unit(std::size_t n, std::size_t k) {
  if (k >= n) throw DimensionError("unit vector index out of range");
  DenseVector e(n);
  e[k] = 1.0;
  return e;
}

double DenseVector::norm2() const { return rpgmres::norm2(data_); }

DenseVector& DenseVector::operator+=(const DenseVector& other) {
  if (other.size() != size()) throw DimensionError("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseVector& DenseVector::operator-=(const DenseVector& other) {
  if (other.size() != size()) throw DimensionError("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseVector& DenseVector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseVector operator+(DenseVector a, const DenseVector& b) { return a += b; }
DenseVector operator-(DenseVector a, const DenseVector& b) { return a -= b; }
DenseVector operator*(double s, DenseVector v) { return v *= s; }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  // Scaled accumulation so that vectors with entries near the over/underflow
  // thresholds still produce an accurate norm.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : a) {
    if (v == 0.0) continue;
    const double av = std::abs(v);
    if (scale < av) {
      ssq = 1.0 + ssq * (scale / av) * (scale / av);
      scale = av;
    } else {
      ssq += (av / scale) * (av / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("DenseMatrix " + shape(rows, cols) + ": got " +
                         std::to_string(data_.size()) + " entries");
  }
  require_finite(data_, "DenseMatrix");
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  DenseMatrix a(m, n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw DimensionError("from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  require_finite(a.data_, "DenseMatrix");
  return a;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  require_finite(diag, "DenseMatrix");
  DenseMatrix a(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) a(i, i) = diag[i];
  return a;
}

DenseMatrix DenseMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

DenseMatrix DenseMatrix::from_columns(std::span<const DenseVector> columns) {
  if (columns.empty()) return {};
  const std::size_t m = columns.front().size();
  DenseMatrix a(m, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m) {
      throw DimensionError("from_columns: column lengths differ");
    }
    std::copy(columns[j].span().begin(), columns[j].span().end(),
              a.col(j).begin());
  }
  return a;
}

DenseVector DenseMatrix::column(std::size_t j) const {
  auto c = col(j);
  return DenseVector(std::vector<double>(c.begin(), c.end()));
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius_norm() const { return norm2(data_); }

std::size_t DenseMatrix::count_nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](double v) { return v != 0.0; }));
}

DenseMatrix DenseMatrix::block(std::size_t row0, std::size_t col0,
                               std::size_t r, std::size_t c) const {
  if (row0 + r > rows_ || col0 + c > cols_) {
    throw DimensionError("block out of range of " + shape(rows_, cols_));
  }
  DenseMatrix b(r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i) b(i, j) = (*this)(row0 + i, col0 + j);
  return b;
}

DenseVector operator*(const DenseMatrix& a, const DenseVector& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: " + shape(a.rows(), a.cols()) + " times " +
                         std::to_string(x.size()));
  }
  DenseVector y(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (x[j] != 0.0) axpy(x[j], a.col(j), y.span());
  }
  return y;
}

DenseVector multiply_transpose(const DenseMatrix& a, const DenseVector& x) {
  if (a.rows() != x.size()) {
    throw DimensionError("matvec^T: " + shape(a.rows(), a.cols()) + " with " +
                         std::to_string(x.size()));
  }
  DenseVector y(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) y[j] = dot(a.col(j), x.span());
  return y;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + shape(a.rows(), a.cols()) + " times " +
                         shape(b.rows(), b.cols()));
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj != 0.0) axpy(bkj, a.col(k), c.col(j));
    }
  }
  return c;
}

DenseMatrix multiply_transpose(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("matmul^T: " + shape(a.rows(), a.cols()) + " with " +
                         shape(b.rows(), b.cols()));
  }
  DenseMatrix c(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) c(i, j) = dot(a.col(i), b.col(j));
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix add: shape mismatch");
  }
  DenseMatrix c = a;
  for (std::size_t j = 0; j < a.cols(); ++j) axpy(1.0, b.col(j), c.col(j));
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix subtract: shape mismatch");
  }
  DenseMatrix c = a;
  for (std::size_t j = 0; j < a.cols(); ++j) axpy(-1.0, b.col(j), c.col(j));
  return c;
}

DenseMatrix operator*(double s, DenseMatrix a) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (double& v : a.col(j)) v *= s;
  return a;
}

DenseMatrix scale_columns(const DenseMatrix& a, std::span<const double> d) {
  if (d.size() != a.cols()) throw DimensionError("scale_columns: length mismatch");
  DenseMatrix c = a;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (double& v : c.col(j)) v *= d[j];
  return c;
}

DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hcat: row counts differ");
  DenseMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    std::copy(a.col(j).begin(), a.col(j).end(), c.col(j).begin());
  for (std::size_t j = 0; j < b.cols(); ++j)
    std::copy(b.col(j).begin(), b.col(j).end(), c.col(a.cols() + j).begin());
  return c;
}

}  // namespace rpgmres
