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

#include <cmath>
#include <optional>
#include <stdexcept>

#include <Eigen/LU>

#include "mupa/power_allocation.hpp"

namespace mupa {

namespace {

struct Candidate {
  RVector p;
  RVector lambda;  // restricted to the active set
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Advances `idx` to the next k-subset of {0..n-1} in lexicographic order.
bool next_subset(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

std::optional<Candidate> solve_single(const RMatrix& As, double b) {
  const RVector a = As.row(0).transpose();
  if (!(a.array() > 0.0).all()) return std::nullopt;
  const double L = static_cast<double>(a.size());
  return Candidate{(b / L) * a.cwiseInverse(), RVector::Constant(1, L / b)};
}

std::optional<Candidate> solve_square(const RMatrix& As, double b) {
  Eigen::FullPivLU<RMatrix> lu(As);
  if (!lu.isInvertible()) return std::nullopt;
  const RVector p = lu.solve(RVector::Constant(As.rows(), b));
  if (!(p.array() > 0.0).all()) return std::nullopt;
  const RVector lambda = As.transpose().fullPivLu().solve(p.cwiseInverse());
  return Candidate{p, lambda};
}

// Reduced dual of max sum ln p s.t. A_S p = b:
//   phi(lambda) = b sum lambda - sum_l ln (A_S^T lambda)_l,  p = 1 ./ (A_S^T lambda).
std::optional<Candidate> solve_mixed(const RMatrix& As, double b, const KktOptions& opt) {
  const RVector colsum = As.colwise().sum().transpose();
  if (!(colsum.array() > 0.0).all()) return std::nullopt;
  const auto m = As.rows();
  const double L = static_cast<double>(As.cols());

  auto phi = [&](const RVector& u, const RVector& lam) { return b * lam.sum() - u.array().log().sum(); };

  // Constant start scaled so the active rows meet the budget on average.
  RVector lambda = RVector::Constant(m, L / (static_cast<double>(m) * b));
  RVector u = As.transpose() * lambda;
  for (int it = 0; it < opt.newton_max_iters; ++it) {
    const RVector p = u.cwiseInverse();
    const RVector grad = RVector::Constant(m, b) - As * p;
    if (grad.cwiseAbs().maxCoeff() <= 1e-14 * b) return Candidate{p, lambda};
    const RMatrix H = As * p.cwiseAbs2().asDiagonal() * As.transpose();
    Eigen::LDLT<RMatrix> ldlt(H);
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    const RVector step = -ldlt.solve(grad);
    const double slope = grad.dot(step);
    if (!(slope < 0.0)) {
      // Stalled at rounding level: accept if the budget rows are met.
      if (grad.cwiseAbs().maxCoeff() <= 1e-11 * b) return Candidate{p, lambda};
      return std::nullopt;
    }
    const double f0 = phi(u, lambda);
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-12) {
      const RVector trial = lambda + t * step;
      const RVector ut = As.transpose() * trial;
      if ((ut.array() > 0.0).all() && phi(ut, trial) <= f0 + 1e-4 * t * slope) {
        lambda = trial;
        u = ut;
        accepted = true;
        break;
      }
      t *= opt.newton_damping;
    }
    if (!accepted) {
      if (grad.cwiseAbs().maxCoeff() <= 1e-11 * b) return Candidate{p, lambda};
      return std::nullopt;
    }
  }
  const RVector p = u.cwiseInverse();
  if ((RVector::Constant(m, b) - As * p).cwiseAbs().maxCoeff() <= 1e-11 * b) return Candidate{p, lambda};
  return std::nullopt;
}

KktResiduals residuals(const RMatrix& A, double b, const RVector& p, const RVector& lambda) {
  KktResiduals r;
  const RVector load = A * p;
  const RVector dual = A.transpose() * lambda;
  r.stationarity = (p.cwiseProduct(dual).array() - 1.0).abs().maxCoeff();
  r.complementarity = lambda.cwiseProduct(load - RVector::Constant(A.rows(), b)).cwiseAbs().maxCoeff();
  r.feasibility = std::max(0.0, (load.array() - b).maxCoeff() / b);
  return r;
}

}  // namespace

KktSolution papc_kkt_solve(const RMatrix& A, double P_total, const KktOptions& opt) {
  if (!(P_total > 0.0)) throw std::invalid_argument("papc_kkt_solve: P_total must be positive");
  if (A.rows() < 1 || A.cols() < 1) throw std::invalid_argument("papc_kkt_solve: empty matrix");
  if (!A.allFinite() || (A.array() < 0.0).any()) throw std::invalid_argument("papc_kkt_solve: A must be nonnegative");
  const int T = static_cast<int>(A.rows());
  const int L = static_cast<int>(A.cols());
  const int m_max = std::min(L, T);
  const double b = P_total / T;

  double total = 0.0;
  for (int m = 1; m <= m_max; ++m) total += binomial(T, m);
  if (total > static_cast<double>(opt.max_subsets)) {
    throw std::invalid_argument("papc_kkt_solve: active-set enumeration exceeds the subset budget");
  }

  std::optional<KktSolution> best;
  std::vector<KktCandidate> alternatives;
  for (int m = 1; m <= m_max; ++m) {
    std::vector<int> S(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) S[static_cast<std::size_t>(j)] = j;
    do {
      RMatrix As(m, L);
      for (int j = 0; j < m; ++j) As.row(j) = A.row(S[static_cast<std::size_t>(j)]);
      std::optional<Candidate> c = m == 1 ? solve_single(As, b) : m == L ? solve_square(As, b) : solve_mixed(As, b, opt);
      if (!c) continue;

      RVector lambda = RVector::Zero(T);
      for (int j = 0; j < m; ++j) lambda(S[static_cast<std::size_t>(j)]) = c->lambda(j);
      if (!(c->p.array() > 0.0).all() || !c->p.allFinite()) continue;
      if ((lambda.array() < -opt.multiplier_tol).any()) continue;
      const KktResiduals res = residuals(A, b, c->p, lambda);
      if (res.feasibility > opt.feasibility_tol || res.stationarity > 1e-8) continue;

      const double objective = c->p.array().log().sum();
      alternatives.push_back({S, objective});
      if (!best || objective > best->objective) {
        best = KktSolution{c->p, lambda, S, res, objective, {}};
      }
    } while (next_subset(S, T));
  }
  if (!best) throw NumericalError("papc_kkt_solve: no active set produced a certified KKT point");
  best->alternatives = std::move(alternatives);
  return *best;
}

KktSolution papc_kkt_solve(const Precoder& pre, double P_total, const KktOptions& options) {
  return papc_kkt_solve(pre.row_sq, P_total, options);
}

}  // namespace mupa
