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

// MPACH1 layout:
//   MPACH1 K T R_1,...,R_K
//   then for every user k, R_k lines; line i holds T "re,im" pairs joined
//   by ';'. Numbers use the shortest representation that round-trips.

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "mupa/channel.hpp"

namespace mupa {

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

bool parse_int(std::string_view s, int& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string where(int k, int i, int j) {
  return "(" + std::to_string(k) + "," + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

void write_channels(std::ostream& out, std::span<const UserChannel> users) {
  if (users.empty()) throw std::invalid_argument("write_channels: no users");
  const Eigen::Index T = users.front().H.cols();
  std::string line = "MPACH1 " + std::to_string(users.size()) + " " + std::to_string(T) + " ";
  for (std::size_t k = 0; k < users.size(); ++k) {
    if (users[k].H.cols() != T) throw std::invalid_argument("write_channels: inconsistent T");
    if (k > 0) line += ',';
    line += std::to_string(users[k].H.rows());
  }
  out << line << '\n';
  for (const UserChannel& u : users) {
    for (Eigen::Index i = 0; i < u.H.rows(); ++i) {
      line.clear();
      for (Eigen::Index j = 0; j < T; ++j) {
        if (j > 0) line += ';';
        append_double(line, u.H(i, j).real());
        line += ',';
        append_double(line, u.H(i, j).imag());
      }
      out << line << '\n';
    }
  }
  if (!out) throw std::runtime_error("write_channels: stream error");
}

LoadedChannels read_channels(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("malformed header");
  std::istringstream hs(header);
  std::string magic, k_str, t_str, r_str, extra;
  if (!(hs >> magic >> k_str >> t_str >> r_str) || (hs >> extra) || magic != "MPACH1") {
    throw FormatError("malformed header");
  }
  int K = 0;
  int T = 0;
  if (!parse_int(k_str, K) || !parse_int(t_str, T) || K < 1 || T < 1) throw FormatError("malformed header");

  LoadedChannels loaded;
  loaded.dims.T = T;
  std::string_view rv(r_str);
  while (!rv.empty()) {
    const std::size_t comma = rv.find(',');
    int r = 0;
    if (!parse_int(rv.substr(0, comma), r) || r < 1) throw FormatError("malformed header");
    loaded.dims.rx.push_back(r);
    rv = comma == std::string_view::npos ? std::string_view() : rv.substr(comma + 1);
  }
  if (static_cast<int>(loaded.dims.rx.size()) != K) throw FormatError("dimension mismatch: K vs receive list");
  loaded.dims.layers.assign(loaded.dims.rx.size(), 1);

  std::string line;
  for (int k = 0; k < K; ++k) {
    CMatrix H(loaded.dims.rx[k], T);
    for (int i = 0; i < loaded.dims.rx[k]; ++i) {
      if (!std::getline(in, line)) throw FormatError("dimension mismatch: missing rows for user " + std::to_string(k));
      std::string_view rest(line);
      for (int j = 0; j < T; ++j) {
        if (rest.empty()) throw FormatError("dimension mismatch: short row at " + where(k, i, j));
        const std::size_t semi = rest.find(';');
        const std::string_view pair = rest.substr(0, semi);
        rest = semi == std::string_view::npos ? std::string_view() : rest.substr(semi + 1);
        const std::size_t comma = pair.find(',');
        double re = 0.0;
        double im = 0.0;
        if (comma == std::string_view::npos || !parse_double(pair.substr(0, comma), re) ||
            !parse_double(pair.substr(comma + 1), im)) {
          throw FormatError("malformed value at " + where(k, i, j));
        }
        if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("non-finite value at " + where(k, i, j));
        H(i, j) = cdouble(re, im);
      }
      if (!rest.empty()) throw FormatError("dimension mismatch: long row for user " + std::to_string(k));
    }
    loaded.users.push_back({std::move(H)});
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError("dimension mismatch: trailing data");
  }
  return loaded;
}

void save_channels(const std::string& path, std::span<const UserChannel> users) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_channels: cannot open " + path);
  write_channels(out, users);
}

LoadedChannels load_channels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_channels: cannot open " + path);
  return read_channels(in);
}

}  // namespace mupa
