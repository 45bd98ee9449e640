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

#include "mupa/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "linalg.hpp"

namespace mupa {

namespace {

constexpr double kSingularTol = 1e-14;

void check_reg(double reg) {
  if (!(reg >= 0.0) || !std::isfinite(reg)) throw std::invalid_argument("detection: reg must be finite and >= 0");
}

}  // namespace

std::string to_string(DetectorType type) {
  switch (type) {
    case DetectorType::Conjugate: return "CD";
    case DetectorType::MMSE: return "MMSE";
    case DetectorType::MmseIrc: return "MMSE-IRC";
  }
  return "?";
}

DetectorType parse_detector_type(const std::string& name) {
  if (name == "CD") return DetectorType::Conjugate;
  if (name == "MMSE") return DetectorType::MMSE;
  if (name == "MMSE-IRC" || name == "IRC") return DetectorType::MmseIrc;
  throw std::invalid_argument("unknown detector: " + name);
}

CMatrix DetectionSet::assemble() const {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const CMatrix& g : G) {
    rows += g.rows();
    cols += g.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const CMatrix& g : G) {
    out.block(r, c, g.rows(), g.cols()) = g;
    r += g.rows();
    c += g.cols();
  }
  return out;
}

CMatrix mmse_detection(const CMatrix& H_k, const CMatrix& W_k, double reg) {
  check_reg(reg);
  const CMatrix A = H_k * W_k;
  CMatrix M = A.adjoint() * A;
  M.diagonal().array() += reg;
  return detail::solve_hpd_strict(M, A.adjoint(), kSingularTol, "mmse_detection");
}

CMatrix mmse_irc_detection(const CMatrix& H_k, const CMatrix& W, const CMatrix& W_k, double reg) {
  check_reg(reg);
  const CMatrix HW = H_k * W;
  const CMatrix A = H_k * W_k;
  CMatrix M = HW * HW.adjoint();
  M.diagonal().array() += reg;
  // X = M^-1 A, G = X^H (M Hermitian).
  return detail::solve_hpd_strict(M, A, kSingularTol, "mmse_irc_detection").adjoint();
}

CMatrix intra_user_interference(const CMatrix& H_k, const CMatrix& W, const CMatrix& W_k) {
  return H_k * (W * W.adjoint() - W_k * W_k.adjoint()) * H_k.adjoint();
}

CMatrix mmse_irc_detection_ruu(const CMatrix& H_k, const CMatrix& W, const CMatrix& W_k, double reg) {
  check_reg(reg);
  const CMatrix A = H_k * W_k;
  CMatrix M = A * A.adjoint() + intra_user_interference(H_k, W, W_k);
  M.diagonal().array() += reg;
  return A.adjoint() * M.inverse();
}

CMatrix conjugate_detection(const TruncatedSvd& svd, std::span<const double> p_k) {
  if (static_cast<Eigen::Index>(p_k.size()) != svd.S.size()) {
    throw std::invalid_argument("conjugate_detection: power block length mismatch");
  }
  CMatrix G = svd.U;
  for (Eigen::Index l = 0; l < svd.S.size(); ++l) {
    const double p = p_k[static_cast<std::size_t>(l)];
    if (!(p > 0.0)) throw std::invalid_argument("conjugate_detection: zero power");
    if (!(svd.S(l) > 0.0)) throw std::invalid_argument("conjugate_detection: zero singular value");
    G.row(l) /= std::sqrt(p) * svd.S(l);
  }
  return G;
}

DetectionSet detect(DetectorType type, const ChannelSet& channels, const Precoder& pre,
                    const PowerAllocation& pa, double reg) {
  const SystemDims& dims = channels.dims;
  const CMatrix W = apply_power(pre, pa);
  DetectionSet out;
  out.G.reserve(static_cast<std::size_t>(dims.users()));
  for (int k = 0; k < dims.users(); ++k) {
    const int off = dims.layer_offset(k);
    const int lk = dims.layers[k];
    const CMatrix& H = channels.users[k].H;
    switch (type) {
      case DetectorType::Conjugate:
        out.G.push_back(conjugate_detection(
            channels.svds[k], std::span<const double>(pa.p().data() + off, static_cast<std::size_t>(lk))));
        break;
      case DetectorType::MMSE:
        out.G.push_back(mmse_detection(H, W.middleCols(off, lk), reg));
        break;
      case DetectorType::MmseIrc:
        out.G.push_back(mmse_irc_detection(H, W, W.middleCols(off, lk), reg));
        break;
    }
  }
  return out;
}

}  // namespace mupa
