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

#ifndef MUPA_PRECODING_HPP
#define MUPA_PRECODING_HPP

#include <string>
#include <vector>

#include "mupa/channel.hpp"

namespace mupa {

enum class PrecoderType { MRT, ZF, RZF, ARZF };

/// Linear precoder family plus its regulariser (ignored by MRT and ZF).
struct PrecoderKind {
  PrecoderType type = PrecoderType::ZF;
  double regularization = 0.0;

  static PrecoderKind mrt() { return {PrecoderType::MRT, 0.0}; }
  static PrecoderKind zf() { return {PrecoderType::ZF, 0.0}; }
  static PrecoderKind rzf(double reg) { return {PrecoderType::RZF, reg}; }
  static PrecoderKind arzf(double reg) { return {PrecoderType::ARZF, reg}; }
};

std::string to_string(PrecoderType type);
PrecoderType parse_precoder_type(const std::string& name);

/// Unnormalised precoder W' (T x L) with cached column norms ||w'_l|| and
/// the matrix of squared magnitudes a_tl = |w'_tl|^2 used by per-antenna
/// power allocation.
struct Precoder {
  PrecoderKind kind;
  CMatrix Wp;
  RVector col_norms;
  RMatrix row_sq;

  int antennas() const { return static_cast<int>(Wp.rows()); }
  int layers() const { return static_cast<int>(Wp.cols()); }
};

/// Wraps an arbitrary W' and fills the norm caches.
Precoder make_precoder(CMatrix Wp, PrecoderKind kind = PrecoderKind::zf());

/// MRT: V^H.  ZF: V^H (V V^H)^-1.  RZF: V^H (V V^H + reg I)^-1.
/// ARZF: V^H (V V^H + reg S^-2)^-1.
///
/// Throws NumericalError when V V^H has condition number >= 1e12 (ZF) or a
/// singular value is zero (ARZF).
Precoder build_precoder(const PrecoderKind& kind, const MainDecomposition& decomp);

/// Per-layer powers in both parameterisations: p_l (the squared diagonal of
/// P) and the transmitted energy rho_l = p_l ||w'_l||^2.
class PowerAllocation {
 public:
  static PowerAllocation from_p(const Precoder& pre, RVector p);
  static PowerAllocation from_rho(const Precoder& pre, RVector rho);

  const RVector& p() const { return p_; }
  const RVector& rho() const { return rho_; }
  double total_power() const { return rho_.sum(); }

 private:
  PowerAllocation(RVector p, RVector rho) : p_(std::move(p)), rho_(std::move(rho)) {}
  RVector p_;
  RVector rho_;
};

/// W = W' diag(sqrt(p)).
CMatrix apply_power(const Precoder& pre, const PowerAllocation& pa);

/// Per-antenna transmit power sum_l a_tl p_l for an arbitrary p.
RVector antenna_powers(const Precoder& pre, const RVector& p);

enum class ConstraintMode { TPC, PAPC };

struct AntennaViolation {
  int antenna = 0;
  double power = 0.0;
  double excess = 0.0;  // power - P/T
};

struct ConstraintReport {
  bool satisfied = true;
  double total_power = 0.0;
  double max_antenna_power = 0.0;
  double limit = 0.0;  // P for TPC, P/T for PAPC
  std::vector<AntennaViolation> violations;
};

/// TPC: ||W||_F^2 <= P (1 + tol).  PAPC: every row norm^2 <= (P/T)(1 + tol).
ConstraintReport check_constraints(const CMatrix& W, double P, ConstraintMode mode, double tol);

}  // namespace mupa

#endif  // MUPA_PRECODING_HPP
