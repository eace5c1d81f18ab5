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
#include <string>
#include <vector>

#include "rpgmres/krylov.hpp"

namespace rpgmres::io {

inline constexpr const char* kHistoryHeader =
    "iter,rel_res,at_rel_res,h_subdiag,sigma_max_h,sigma_min_h,rank_used,tol_used";

/// One row per record; reals in %.16e (17 significant digits), unrecorded
/// spectra as "nan".
void write_history_csv(std::ostream& out, const std::vector<IterateRecord>& records);
void write_history_csv(const std::filesystem::path& path,
                       const std::vector<IterateRecord>& records);

/// Inverse of write_history_csv. Throws ParseError on a bad header, a wrong
/// column count or an unparseable field.
std::vector<IterateRecord> read_history_csv(std::istream& in,
                                            const std::string& source = "<stream>");
std::vector<IterateRecord> read_history_csv(const std::filesystem::path& path);

}  // namespace rpgmres::io
