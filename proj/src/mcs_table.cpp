// SPDX-License-Identifier: Apache-2.0
//
// mupa: multi-user MIMO precoding and power allocation library
// Copyright (C) 2026 The mupa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mupa/mcs_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mupa/system.hpp"

namespace mupa {

namespace {

// clang-format off
constexpr McsTable kTable1{1,
  {1.6, 1.61, 1.63, 1.65, 1.67, 1.7, 1.73, 1.76, 1.79, 1.82, 3.97, 4.27, 4.71, 5.16,
   5.66, 6.16, 6.5, 9.95, 10.97, 12.92, 14.96, 17.06, 19.33, 21.85, 24.51, 27.14, 29.94, 32.05},
  {0.2344, 0.3066, 0.377, 0.4902, 0.6016, 0.7402, 0.877, 1.0273, 1.1758, 1.3262, 1.3281, 1.4766,
   1.6953, 1.9141, 2.1602, 2.4063, 2.5703, 2.7305, 3.0293, 3.3223, 3.6094, 3.9023, 4.2129,
   4.5234, 4.8164, 5.1152, 5.332, 5.5547}};

constexpr McsTable kTable2{2,
  {1.6, 1.63, 1.67, 1.73, 1.79, 4.27, 4.71, 5.16, 5.66, 6.16, 6.5, 10.97, 12.92, 14.96,
   17.06, 19.33, 21.85, 24.51, 27.14, 29.94, 56.48, 65, 78.58, 92.48, 106.27, 118.74, 126.36, 132.54},
  {0.2344, 0.377, 0.6016, 0.877, 1.1758, 1.4766, 1.6953, 1.9141, 2.1602, 2.4063, 2.5703, 2.7305,
   3.0293, 3.3223, 3.6094, 3.9023, 4.2129, 4.5234, 4.8164, 5.1152, 5.332, 5.5547, 5.8906,
   6.2266, 6.5703, 6.9141, 7.1602, 7.4063}};
// clang-format on

void check_increasing(const std::array<double, kMcsCount>& col, const char* name) {
  for (int m = 0; m < kMcsCount; ++m) {
    if (!std::isfinite(col[m]) || !(col[m] > 0.0)) {
      throw std::invalid_argument(std::string("McsTable: non-positive ") + name);
    }
    if (m > 0 && !(col[m] > col[m - 1])) {
      throw std::invalid_argument(std::string("McsTable: ") + name + " not strictly increasing");
    }
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw FormatError("mcs table: bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

const McsTable& McsTable::builtin(int id) {
  if (id == 1) return kTable1;
  if (id == 2) return kTable2;
  throw std::invalid_argument("McsTable: table id must be 1 or 2");
}

void McsTable::validate() const {
  check_increasing(beta, "beta");
  check_increasing(se, "se");
}

const McsTable& McsTablePair::get(int id) const {
  if (id == 1) return table1;
  if (id == 2) return table2;
  throw std::invalid_argument("McsTable: table id must be 1 or 2");
}

McsTablePair builtin_mcs_tables() { return {kTable1, kTable2}; }

McsTablePair read_mcs_tables(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("mcs table: empty input");
  McsTablePair out;
  out.table1.id = 1;
  out.table2.id = 2;
  std::array<bool, kMcsCount> seen{};
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cols = split(line, ',');
    if (cols.size() != 5) throw FormatError("mcs table: expected 5 columns");
    const int m = parse_number<int>(cols[0]);
    if (m < 0 || m >= kMcsCount || seen[m]) throw FormatError("mcs table: bad or repeated mcs index");
    seen[m] = true;
    out.table1.beta[m] = parse_number<double>(cols[1]);
    out.table2.beta[m] = parse_number<double>(cols[2]);
    out.table1.se[m] = parse_number<double>(cols[3]);
    out.table2.se[m] = parse_number<double>(cols[4]);
  }
  for (bool s : seen) {
    if (!s) throw FormatError("mcs table: missing mcs rows");
  }
  out.table1.validate();
  out.table2.validate();
  return out;
}

McsTablePair load_mcs_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_mcs_tables: cannot open " + path);
  return read_mcs_tables(in);
}

}  // namespace mupa
