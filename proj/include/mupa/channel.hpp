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

#ifndef MUPA_CHANNEL_HPP
#define MUPA_CHANNEL_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mupa/system.hpp"

namespace mupa {

/// Downlink channel of one user, R_k x T.
struct UserChannel {
  CMatrix H;
};

/// Rank-L_k truncated SVD with H_k ~= U^H diag(S) V.
///
/// Rows of U (L_k x R_k) and V (L_k x T) are the conjugated left and the
/// right singular vectors of the kept block. Each row of V is rotated so
/// that its first entry of largest magnitude is real and positive; the
/// matching row of U carries the same phase.
struct TruncatedSvd {
  CMatrix U;
  RVector S;
  CMatrix V;
  /// Sum of squared discarded singular values (zero when L_k = R_k).
  double discarded_energy = 0.0;

  int layers() const { return static_cast<int>(S.size()); }
};

/// Stacked per-user decomposition H = U^H S V.
///
/// U is block-diagonal (L x R) with orthonormal-row blocks, V (L x T) is the
/// stack of all V_k and is not unitary; C = V V^H - I measures inter-user
/// correlation of the layer directions.
struct MainDecomposition {
  SystemDims dims;
  CMatrix U;
  RVector S;
  CMatrix V;
  CMatrix C;
};

/// Channels together with everything derived from them.
struct ChannelSet {
  SystemDims dims;
  std::vector<UserChannel> users;
  std::vector<TruncatedSvd> svds;
  MainDecomposition decomposition;

  static ChannelSet build(const SystemDims& dims, std::vector<UserChannel> users);
};

/// I.i.d. CN(0, 1) entries, deterministic for a given seed.
std::vector<UserChannel> generate_rayleigh(const SystemDims& dims, std::uint64_t seed);

/// Kronecker-correlated channels H_k = R_rx^{1/2} G_k R_tx^{1/2} with
/// exponential profiles corr^|i-j| on both sides; corr = 0 is Rayleigh.
///
/// The shared transmit-side factor is what drives the inter-user
/// correlation ||C|| up as corr grows. Entry variances stay at one.
std::vector<UserChannel> generate_correlated(const SystemDims& dims, double corr, std::uint64_t seed);

/// Channels whose user subspaces are nearly orthogonal: ||C|| grows
/// linearly with `coupling` and vanishes at coupling = 0.
///
/// Each H_k = Q_k^H diag(s_k) B_k with a random unitary Q_k, distinct
/// singular values s_k around sqrt(T), and B_k an orthonormalised
/// perturbation of a globally orthonormal row block.
std::vector<UserChannel> generate_low_correlation(const SystemDims& dims, double coupling,
                                                  std::uint64_t seed);

/// Spectral norm of C = V V^H - I for a set of channels (layers per dims).
double interference_correlation_norm(const SystemDims& dims, std::span<const UserChannel> users);

TruncatedSvd truncated_svd(const UserChannel& user, int layers);

/// Throws std::invalid_argument if the V blocks disagree on T.
MainDecomposition main_decomposition(std::span<const TruncatedSvd> svds);

// ---- MPACH1 channel files ----------------------------------------------

/// Contents of an MPACH1 file. Layer counts are not stored in the file;
/// `dims.layers` defaults to one layer per user and is normally overwritten
/// by the caller before building a ChannelSet.
struct LoadedChannels {
  SystemDims dims;
  std::vector<UserChannel> users;
};

void write_channels(std::ostream& out, std::span<const UserChannel> users);
LoadedChannels read_channels(std::istream& in);

void save_channels(const std::string& path, std::span<const UserChannel> users);
LoadedChannels load_channels(const std::string& path);

}  // namespace mupa

#endif  // MUPA_CHANNEL_HPP
