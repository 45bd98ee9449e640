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

#ifndef MUPA_MCS_TABLE_HPP
#define MUPA_MCS_TABLE_HPP

#include <array>
#include <iosfwd>
#include <string>

namespace mupa {

inline constexpr int kMcsCount = 28;

/// EESM beta and spectral efficiency (bit/s/Hz per layer) for MCS 0..27.
struct McsTable {
  int id = 1;
  std::array<double, kMcsCount> beta{};
  std::array<double, kMcsCount> se{};

  /// Built-in tables 1 and 2.
  static const McsTable& builtin(int id);

  /// Throws std::invalid_argument unless both columns are strictly increasing
  /// and every entry is positive and finite.
  void validate() const;
};

struct McsTablePair {
  McsTable table1;
  McsTable table2;

  const McsTable& get(int id) const;
};

/// Parses the CSV layout `mcs,beta1,beta2,se1,se2` with a header row.
McsTablePair read_mcs_tables(std::istream& in);
McsTablePair load_mcs_tables(const std::string& path);
McsTablePair builtin_mcs_tables();

}  // namespace mupa

#endif  // MUPA_MCS_TABLE_HPP
