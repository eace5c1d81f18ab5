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

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rpgmres/dense.hpp"

namespace rpgmres::io {

/// Malformed input file; the message carries the path and line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinate format, real general, 1-based, entries in column-major order
/// with 17 significant digits. Zero entries are omitted.
void write_matrix_market(std::ostream& out, const DenseMatrix& a,
                         const std::string& comment = {});
void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& a,
                         const std::string& comment = {});

/// Reads coordinate (real/integer, general/symmetric/skew-symmetric) or
/// array (real/integer, general) files.
DenseMatrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");
DenseMatrix read_matrix_market(const std::filesystem::path& path);

/// Array format, n x 1.
void write_vector_market(std::ostream& out, const DenseVector& v,
                         const std::string& comment = {});
void write_vector_market(const std::filesystem::path& path, const DenseVector& v,
                         const std::string& comment = {});

/// Reads any n x 1 or 1 x n Matrix Market file.
DenseVector read_vector_market(std::istream& in, const std::string& source = "<stream>");
DenseVector read_vector_market(const std::filesystem::path& path);

}  // namespace rpgmres::io
