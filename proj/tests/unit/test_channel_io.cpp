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


#include <doctest.h>

#include <sstream>

#include "mupa/channel.hpp"

using namespace mupa;

namespace {

std::string round_trip_text(const std::vector<UserChannel>& users) {
  std::ostringstream os;
  write_channels(os, users);
  return os.str();
}

void expect_error(const std::string& text, const std::string& fragment) {
  std::istringstream is(text);
  try {
    read_channels(is);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("MPACH1 round trip is exact") {
  const SystemDims d{5, {2, 1}, {1, 1}};
  const auto users = generate_rayleigh(d, 99);
  const std::string text = round_trip_text(users);
  CHECK(text.rfind("MPACH1 2 5 2,1\n", 0) == 0);
  std::istringstream is(text);
  const LoadedChannels back = read_channels(is);
  CHECK(back.dims.T == 5);
  CHECK(back.dims.rx == std::vector<int>{2, 1});
  CHECK(back.dims.layers == std::vector<int>{1, 1});
  REQUIRE(back.users.size() == 2);
  CHECK(back.users[0].H == users[0].H);
  CHECK(back.users[1].H == users[1].H);
  CHECK(round_trip_text(back.users) == text);
}

TEST_CASE("MPACH1 body layout") {
  CMatrix H(1, 2);
  H << cdouble(1.5, -2.0), cdouble(0.0, 0.25);
  CHECK(round_trip_text({{H}}) == "MPACH1 1 2 1\n1.5,-2;0,0.25\n");
}

TEST_CASE("MPACH1 parse errors") {
  expect_error("", "malformed header");
  expect_error("MPACH2 1 2 1\n1,0;0,1\n", "malformed header");
  expect_error("MPACH1 1 2\n1,0;0,1\n", "malformed header");
  expect_error("MPACH1 2 2 1\n1,0;0,1\n", "dimension mismatch");
  expect_error("MPACH1 1 2 1\n1,0;0,1;2,2\n", "dimension mismatch");
  expect_error("MPACH1 1 2 1\n1,0;0,1\n3,3;3,3\n", "dimension mismatch");
  expect_error("MPACH1 1 2 1\n1,0;nan,1\n", "non-finite value at (0,0,1)");
  expect_error("MPACH1 1 2 1\n1,0;x,1\n", "malformed value");
}

TEST_CASE("MPACH1 files") {
  const std::string path = "test_channel_io.mpach";
  const auto users = generate_rayleigh(SystemDims::uniform(4, 2, 2, 1), 3);
  save_channels(path, users);
  const LoadedChannels back = load_channels(path);
  CHECK(back.users[1].H == users[1].H);
  CHECK_THROWS(load_channels("/nonexistent/dir/file.mpach"));
}
