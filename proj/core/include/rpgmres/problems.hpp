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
#include <cstdint>
#include <string>
#include <vector>

#include "rpgmres/dense.hpp"

namespace rpgmres {

/// Exponents of the smallest Jordan eigenvalue (10^-rho) and the smallest
/// diagonal entry (10^-gamma) of the 128x128 test matrices.
struct GpParams {
  double rho = 12.0;
  double gamma = 12.0;

  /// Throws std::invalid_argument unless both exponents are positive and finite.
  void validate() const;

  static GpParams gp_default() { return {12.0, 12.0}; }
  static GpParams index2_default() { return {12.0, 15.0}; }
};

inline constexpr std::size_t kTestMatrixSize = 128;
inline constexpr std::uint64_t kDefaultSeed = 1;

/// alpha_1 .. alpha_16, decreasing from 1 to 10^-rho.
std::vector<double> alpha_sequence(double rho);
/// beta_1 .. beta_32, decreasing from 1 to 10^-gamma.
std::vector<double> beta_sequence(double gamma);

/// k x k Jordan block with lambda on the diagonal and ones above it.
DenseMatrix jordan_block(std::size_t k, double lambda);

/// [[A11, A12], [0, 0]] with A11 = blkdiag(J2(alpha_1..16), diag(beta_1..32))
/// and A12 holding blkdiag(J2(beta_1..16)) in its top-left 32x32 corner.
DenseMatrix gen_gp_matrix(const GpParams& params);

/// gen_gp_matrix with the nilpotent pattern A(2i+63, 2i+64) = 1 (1-based,
/// i = 1..16) placed in the bottom-right block.
DenseMatrix gen_index2_matrix(const GpParams& params);

/// n values in (0, 1) from std::mt19937_64 seeded with `seed`; each draw x
/// maps to ((x >> 11) + 0.5) * 2^-53. Identical on every platform.
DenseVector seeded_uniform(std::size_t n, std::uint64_t seed);

struct RhsMode {
  enum class Kind { Consistent, Inconsistent };
  Kind kind = Kind::Consistent;
  double noise_scale = 0.0;
  std::uint64_t seed = kDefaultSeed;

  static RhsMode consistent() { return {}; }
  /// Throws std::invalid_argument unless noise_scale > 0.
  static RhsMode inconsistent(double noise_scale = 0.01,
                              std::uint64_t seed = kDefaultSeed);
  std::string describe() const;
};

/// A e / ||A e|| with e the ones vector, plus noise_scale * u / ||u|| for
/// the inconsistent mode. Throws NumericalError when A e = 0.
DenseVector gen_rhs(const DenseMatrix& a, const RhsMode& mode);

enum class ProblemFamily { Gp, Index2, Custom };

std::string to_string(ProblemFamily f);
/// Accepts "gp" and "index2".
ProblemFamily parse_family(const std::string& name);

struct ProblemInstance {
  DenseMatrix a;
  DenseVector b;
  ProblemFamily family = ProblemFamily::Custom;
  GpParams params;
  RhsMode rhs_mode;
};

ProblemInstance make_problem(ProblemFamily family, const GpParams& params,
                             const RhsMode& mode);

}  // namespace rpgmres
