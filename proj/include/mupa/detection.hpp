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

#ifndef MUPA_DETECTION_HPP
#define MUPA_DETECTION_HPP

#include <span>
#include <string>
#include <vector>

#include "mupa/channel.hpp"
#include "mupa/precoding.hpp"

namespace mupa {

enum class DetectorType { Conjugate, MMSE, MmseIrc };

std::string to_string(DetectorType type);
DetectorType parse_detector_type(const std::string& name);  // "CD", "MMSE", "MMSE-IRC"

/// Per-user detection matrices G_k (L_k x R_k).
struct DetectionSet {
  std::vector<CMatrix> G;

  /// Block-diagonal L x R assembly.
  CMatrix assemble() const;
};

/// (A^H A + reg I)^-1 A^H with A = H_k W_k.
CMatrix mmse_detection(const CMatrix& H_k, const CMatrix& W_k, double reg);

/// MMSE-IRC in single-inverse form A^H ((H_k W)(H_k W)^H + reg I)^-1,
/// A = H_k W_k. Throws NumericalError when the R_k x R_k system is singular.
CMatrix mmse_irc_detection(const CMatrix& H_k, const CMatrix& W, const CMatrix& W_k, double reg);

/// Covariance of intra-user interference H_k (W W^H - W_k W_k^H) H_k^H.
CMatrix intra_user_interference(const CMatrix& H_k, const CMatrix& W, const CMatrix& W_k);

/// MMSE-IRC written with the explicit interference covariance,
/// A^H (A A^H + R_uu + reg I)^-1. Reference form for cross-checks.
CMatrix mmse_irc_detection_ruu(const CMatrix& H_k, const CMatrix& W, const CMatrix& W_k, double reg);

/// Virtual conjugate detection P_k^-1 S_k^-1 U_k, where P_k = diag(sqrt(p)).
CMatrix conjugate_detection(const TruncatedSvd& svd, std::span<const double> p_k);

/// Detection for every user. `reg` is the receiver regulariser (MMSE and
/// MMSE-IRC only), normally the noise variance.
DetectionSet detect(DetectorType type, const ChannelSet& channels, const Precoder& pre,
                    const PowerAllocation& pa, double reg);

}  // namespace mupa

#endif  // MUPA_DETECTION_HPP
