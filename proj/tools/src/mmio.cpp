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

#include "mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace rpgmres::io {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_comment(std::ostream& out, const std::string& comment) {
  std::istringstream lines(comment);
  std::string line;
  while (std::getline(lines, line)) out << "% " << line << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f.exceptions(std::ios::badbit | std::ios::failbit);
  return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return f;
}

struct Reader {
  std::istream& in;
  std::string source;
  std::size_t line_no = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source + ":" + std::to_string(line_no) + ": " + what);
  }

  // Next non-comment, non-blank line.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '%') continue;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      return true;
    }
    return false;
  }
};

double parse_value(Reader& r, std::istringstream& fields) {
  double v = 0.0;
  if (!(fields >> v)) r.fail("expected a numeric value");
  return v;
}

}  // namespace

void write_matrix_market(std::ostream& out, const DenseMatrix& a, const std::string& comment) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  write_comment(out, comment);
  out << a.rows() << ' ' << a.cols() << ' ' << a.count_nonzeros() << '\n';
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << fmt17(a(i, j)) << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& a,
                         const std::string& comment) {
  auto f = open_out(path);
  write_matrix_market(f, a, comment);
}

DenseMatrix read_matrix_market(std::istream& in, const std::string& source) {
  Reader r{in, source};
  std::string line;
  if (!std::getline(in, line)) r.fail("empty file");
  ++r.line_no;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix") {
    r.fail("missing '%%MatrixMarket matrix' banner");
  }
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "double") {
    r.fail("unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric") {
    r.fail("unsupported symmetry '" + symmetry + "'");
  }

  if (!r.next(line)) r.fail("missing size line");
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, nnz = -1;
  if (format == "coordinate") {
    if (!(size_line >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
      r.fail("bad size line");
    }
  } else if (format == "array") {
    if (!(size_line >> rows >> cols) || rows < 0 || cols < 0) r.fail("bad size line");
    if (symmetry != "general") r.fail("only general array files are supported");
  } else {
    r.fail("unsupported format '" + format + "'");
  }

  DenseMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  if (format == "array") {
    for (long long j = 0; j < cols; ++j) {
      for (long long i = 0; i < rows; ++i) {
        if (!r.next(line)) r.fail("unexpected end of file");
        std::istringstream fields(line);
        a(i, j) = parse_value(r, fields);
      }
    }
  } else {
    for (long long k = 0; k < nnz; ++k) {
      if (!r.next(line)) r.fail("unexpected end of file");
      std::istringstream fields(line);
      long long i = 0, j = 0;
      if (!(fields >> i >> j)) r.fail("expected row and column indices");
      if (i < 1 || i > rows || j < 1 || j > cols) r.fail("index out of range");
      const double v = parse_value(r, fields);
      a(i - 1, j - 1) = v;
      if (i != j && symmetry == "symmetric") a(j - 1, i - 1) = v;
      if (i != j && symmetry == "skew-symmetric") a(j - 1, i - 1) = -v;
    }
  }
  if (r.next(line)) r.fail("trailing data after the last entry");
  for (double v : a.values()) {
    if (!std::isfinite(v)) throw ParseError(source + ": non-finite entry");
  }
  return a;
}

DenseMatrix read_matrix_market(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_matrix_market(f, path.string());
}

void write_vector_market(std::ostream& out, const DenseVector& v, const std::string& comment) {
  out << "%%MatrixMarket matrix array real general\n";
  write_comment(out, comment);
  out << v.size() << " 1\n";
  for (std::size_t i = 0; i < v.size(); ++i) out << fmt17(v[i]) << '\n';
}

void write_vector_market(const std::filesystem::path& path, const DenseVector& v,
                         const std::string& comment) {
  auto f = open_out(path);
  write_vector_market(f, v, comment);
}

DenseVector read_vector_market(std::istream& in, const std::string& source) {
  const DenseMatrix m = read_matrix_market(in, source);
  if (m.cols() != 1 && m.rows() != 1) {
    throw ParseError(source + ": expected a vector, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
  return DenseVector(m.values());
}

DenseVector read_vector_market(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_vector_market(f, path.string());
}

}  // namespace rpgmres::io
