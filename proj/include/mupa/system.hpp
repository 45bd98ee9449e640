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

#ifndef MUPA_SYSTEM_HPP
#define MUPA_SYSTEM_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mupa {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Raised when a numerical precondition fails (singular system, rank deficiency, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on malformed input files (channel files, MCS tables, scenarios).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Antenna and layer counts of a downlink multi-user system.
///
/// User k has `rx[k]` receive antennas and is served with `layers[k]` layers.
/// Layers and antennas are numbered user by user, so user k owns the
/// contiguous block starting at `layer_offset(k)` / `rx_offset(k)`.
struct SystemDims {
  int T = 0;
  std::vector<int> rx;
  std::vector<int> layers;

  static SystemDims uniform(int T, int K, int rx_per_user, int layers_per_user);

  int users() const { return static_cast<int>(rx.size()); }
  int total_rx() const;
  int total_layers() const;
  int layer_offset(int k) const;
  int rx_offset(int k) const;
  /// User index owning each layer, length total_layers().
  std::vector<int> layer_owner() const;

  /// Throws std::invalid_argument unless 1 <= L_k <= R_k and L <= R <= T.
  void validate() const;

  bool operator==(const SystemDims&) const = default;
};

}  // namespace mupa

#endif  // MUPA_SYSTEM_HPP
