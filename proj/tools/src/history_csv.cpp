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

#include "history_csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "mmio.hpp"

namespace rpgmres::io {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

double to_double(const std::string& s, const std::string& where) {
  if (s == "nan" || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError(where + ": bad number '" + s + "'");
  }
  return v;
}

std::size_t to_count(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size()) {
    throw ParseError(where + ": bad count '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

void write_history_csv(std::ostream& out, const std::vector<IterateRecord>& records) {
  out << kHistoryHeader << '\n';
  for (const auto& r : records) {
    out << r.iter << ',' << fmt(r.rel_res) << ',' << fmt(r.at_rel_res) << ','
        << fmt(r.h_subdiag) << ',' << fmt(r.sigma_max_h) << ',' << fmt(r.sigma_min_h) << ','
        << r.rank_used << ',' << fmt(r.tol_used) << '\n';
  }
}

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<IterateRecord>& records) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_history_csv(f, records);
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<IterateRecord> read_history_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHistoryHeader) throw ParseError(source + ":1: unexpected header");

  std::vector<IterateRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 8) {
      throw ParseError(where + ": expected 8 columns, got " + std::to_string(f.size()));
    }
    IterateRecord r;
    r.iter = to_count(f[0], where);
    r.rel_res = to_double(f[1], where);
    r.at_rel_res = to_double(f[2], where);
    r.h_subdiag = to_double(f[3], where);
    r.sigma_max_h = to_double(f[4], where);
    r.sigma_min_h = to_double(f[5], where);
    r.rank_used = to_count(f[6], where);
    r.tol_used = to_double(f[7], where);
    out.push_back(r);
  }
  return out;
}

std::vector<IterateRecord> read_history_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return read_history_csv(f, path.string());
}

}  // namespace rpgmres::io
