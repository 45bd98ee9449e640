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

#include "mupa/precoding.hpp"

#include <cmath>
#include <stdexcept>

#include "linalg.hpp"

namespace mupa {

std::string to_string(PrecoderType type) {
  switch (type) {
    case PrecoderType::MRT: return "MRT";
    case PrecoderType::ZF: return "ZF";
    case PrecoderType::RZF: return "RZF";
    case PrecoderType::ARZF: return "ARZF";
  }
  return "?";
}

PrecoderType parse_precoder_type(const std::string& name) {
  if (name == "MRT") return PrecoderType::MRT;
  if (name == "ZF") return PrecoderType::ZF;
  if (name == "RZF") return PrecoderType::RZF;
  if (name == "ARZF") return PrecoderType::ARZF;
  throw std::invalid_argument("unknown precoder: " + name);
}

Precoder make_precoder(CMatrix Wp, PrecoderKind kind) {
  Precoder pre;
  pre.kind = kind;
  pre.row_sq = Wp.cwiseAbs2();
  pre.col_norms = pre.row_sq.colwise().sum().transpose().cwiseSqrt();
  pre.Wp = std::move(Wp);
  return pre;
}

Precoder build_precoder(const PrecoderKind& kind, const MainDecomposition& decomp) {
  if (!(kind.regularization >= 0.0) || !std::isfinite(kind.regularization)) {
    throw std::invalid_argument("build_precoder: regularization must be finite and nonnegative");
  }
  const CMatrix& V = decomp.V;
  const Eigen::Index L = V.rows();
  if (kind.type == PrecoderType::MRT) return make_precoder(V.adjoint(), kind);

  CMatrix gram = V * V.adjoint();
  switch (kind.type) {
    case PrecoderType::ZF:
      if (!(detail::hermitian_condition(gram) < 1e12)) {
        throw NumericalError("build_precoder: V V^H is singular");
      }
      break;
    case PrecoderType::RZF:
      gram += kind.regularization * CMatrix::Identity(L, L);
      break;
    case PrecoderType::ARZF:
      if (!(decomp.S.minCoeff() > 0.0)) throw NumericalError("build_precoder: zero singular value in ARZF");
      gram.diagonal() += (kind.regularization * decomp.S.cwiseAbs2().cwiseInverse()).cast<cdouble>();
      break;
    case PrecoderType::MRT:
      break;
  }
  // W' = V^H M^-1 = (M^-1 V)^H for Hermitian M.
  return make_precoder(detail::solve_hpd_with_jitter(gram, V).adjoint(), kind);
}

PowerAllocation PowerAllocation::from_p(const Precoder& pre, RVector p) {
  if (p.size() != pre.layers()) throw std::invalid_argument("PowerAllocation: length mismatch");
  if (!p.allFinite() || (p.array() < 0.0).any()) throw std::invalid_argument("PowerAllocation: negative power");
  RVector rho = p.cwiseProduct(pre.col_norms.cwiseAbs2());
  return PowerAllocation(std::move(p), std::move(rho));
}

PowerAllocation PowerAllocation::from_rho(const Precoder& pre, RVector rho) {
  if (rho.size() != pre.layers()) throw std::invalid_argument("PowerAllocation: length mismatch");
  if (!rho.allFinite() || (rho.array() < 0.0).any()) throw std::invalid_argument("PowerAllocation: negative power");
  if ((pre.col_norms.array() <= 0.0).any()) throw std::invalid_argument("PowerAllocation: zero-norm column");
  RVector p = rho.cwiseQuotient(pre.col_norms.cwiseAbs2());
  return PowerAllocation(std::move(p), std::move(rho));
}

CMatrix apply_power(const Precoder& pre, const PowerAllocation& pa) {
  if (pa.p().size() != pre.layers()) throw std::invalid_argument("apply_power: length mismatch");
  return pre.Wp * pa.p().cwiseSqrt().cast<cdouble>().asDiagonal();
}

RVector antenna_powers(const Precoder& pre, const RVector& p) { return pre.row_sq * p; }

ConstraintReport check_constraints(const CMatrix& W, double P, ConstraintMode mode, double tol) {
  ConstraintReport rep;
  const RVector rows = W.cwiseAbs2().rowwise().sum();
  rep.total_power = rows.sum();
  rep.max_antenna_power = rows.size() > 0 ? rows.maxCoeff() : 0.0;
  if (mode == ConstraintMode::TPC) {
    rep.limit = P;
    rep.satisfied = rep.total_power <= P * (1.0 + tol);
    return rep;
  }
  rep.limit = P / static_cast<double>(W.rows());
  for (Eigen::Index t = 0; t < rows.size(); ++t) {
    if (rows(t) > rep.limit * (1.0 + tol)) {
      rep.violations.push_back({static_cast<int>(t), rows(t), rows(t) - rep.limit});
    }
  }
  rep.satisfied = rep.violations.empty();
  return rep;
}

}  // namespace mupa
