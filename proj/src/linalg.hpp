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

#ifndef MUPA_SRC_LINALG_HPP
#define MUPA_SRC_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "mupa/system.hpp"

namespace mupa::detail {

inline CMatrix hermitian_part(const CMatrix& M) { return 0.5 * (M + M.adjoint()); }

/// Ratio of extreme eigenvalues of a Hermitian matrix; +inf if not positive definite.
inline double hermitian_condition(const CMatrix& M) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(M), Eigen::EigenvaluesOnly);
  const RVector& ev = eig.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

/// Solves M X = B for Hermitian positive definite M by Cholesky. If the
/// factorisation fails, retries once with M + (1e-12 * tr(M) / n) I.
inline CMatrix solve_hpd_with_jitter(const CMatrix& M, const CMatrix& B) {
  const CMatrix Mh = hermitian_part(M);
  Eigen::LLT<CMatrix> llt(Mh);
  if (llt.info() == Eigen::Success) return llt.solve(B);
  const double n = static_cast<double>(Mh.rows());
  const double jitter = 1e-12 * Mh.trace().real() / n;
  llt.compute(Mh + jitter * CMatrix::Identity(Mh.rows(), Mh.cols()));
  if (llt.info() != Eigen::Success) throw NumericalError("Cholesky failed even with jitter");
  return llt.solve(B);
}

/// Solves M X = B for Hermitian positive semidefinite M, rejecting systems
/// whose smallest eigenvalue is below `rel_tol` times the largest.
inline CMatrix solve_hpd_strict(const CMatrix& M, const CMatrix& B, double rel_tol, const char* what) {
  const CMatrix Mh = hermitian_part(M);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(Mh);
  const RVector& ev = eig.eigenvalues();
  const double hi = std::max(ev.maxCoeff(), 0.0);
  if (!(hi > 0.0) || ev.minCoeff() <= rel_tol * hi) {
    throw NumericalError(std::string(what) + ": singular system");
  }
  const CMatrix& Q = eig.eigenvectors();
  return Q * (ev.cwiseInverse().asDiagonal() * (Q.adjoint() * B));
}

}  // namespace mupa::detail

#endif  // MUPA_SRC_LINALG_HPP
