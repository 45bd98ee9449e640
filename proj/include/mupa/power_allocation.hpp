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

#ifndef MUPA_POWER_ALLOCATION_HPP
#define MUPA_POWER_ALLOCATION_HPP

#include <cstddef>
#include <vector>

#include "mupa/channel.hpp"
#include "mupa/detection.hpp"
#include "mupa/mcs_table.hpp"
#include "mupa/precoding.hpp"

namespace mupa {

struct PowerConstraint {
  ConstraintMode mode = ConstraintMode::PAPC;
  double P_total = 1.0;
  int T = 1;

  /// P for TPC, P/T for PAPC.
  double limit() const { return mode == ConstraintMode::TPC ? P_total : P_total / T; }
  void validate() const;
};

// ---- total power constraint --------------------------------------------

/// rho_l = P/L, i.e. p_l = (P/L) / ||w'_l||^2.
PowerAllocation equal_pa_tpc(const Precoder& pre, double P_total);

/// Scales p so the active constraint holds with equality.
RVector scale_to_constraint(const Precoder& pre, const RVector& p, const PowerConstraint& c);

/// Unit p (W = W') rescaled onto the constraint.
PowerAllocation native_pa(const Precoder& pre, const PowerConstraint& c);

// ---- EESM closed form --------------------------------------------------

/// Per-layer ||g_l||^2 / |g_l H_k w'_l|^2, so that without interference
/// SINR_l = p_l / (sigma2 * g_norm_l). Equals 1/s_l^2 for ZF with CD.
RVector normalized_detector_norms(const ChannelSet& channels, const Precoder& pre, const DetectionSet& det);

/// Per-user beta from the self-consistent EESM iteration on the given
/// layer SINRs.
RVector freeze_betas(const RVector& layer_sinrs, const SystemDims& dims, const McsTable& table);

/// Quantities shared by the EESM closed form and its stationarity check.
struct EesmPaContext {
  RVector beta_k;   // per user
  RVector g_norms;  // per layer
  RVector f;        // beta_k ln(c_l / mean_k c) + 1
  RVector x;        // exp(-p_l / (beta_k sigma2 g_norm_l))
  RVector X;        // per-user mean of x
};

struct EesmPaResult {
  RVector p;
  EesmPaContext ctx;
  double multiplier = 0.0;
  /// False if some p_l <= 0; x and X are then left empty.
  bool feasible = false;
};

/// Stationary point of sum_k L_k ln(1 + eff_k) with eff_k the fixed-beta
/// EESM of p_l / (sigma2 g_norm_l), under sum_l weight_l p_l = budget.
EesmPaResult eesm_closed_form(const SystemDims& dims, const RVector& beta_k, const RVector& g_norms,
                              const RVector& weight, double budget, double sigma2);

/// Closed form under TPC: weight = ||w'_l||^2, budget = P.
EesmPaResult eesm_tpc_closed_form(const SystemDims& dims, const Precoder& pre, const RVector& beta_k,
                                  const RVector& g_norms, double sigma2, double P_total);

/// Closed form on antenna hyperplane i: weight = a_il, budget = P/T.
EesmPaResult eesm_hyperplane_optimum(const SystemDims& dims, const Precoder& pre, int antenna,
                                     const RVector& beta_k, const RVector& g_norms, double sigma2,
                                     double P_total);

/// sum_k L_k log2(1 + eff_k) for fixed beta and interference-free SINRs.
double eesm_fixed_beta_se(const SystemDims& dims, const RVector& beta_k, const RVector& g_norms,
                          double sigma2, const RVector& p);

/// Gradient in p of -sum_k L_k ln(1 + eff_k) + multiplier (weight . p - budget).
RVector eesm_lagrangian_gradient(const SystemDims& dims, const RVector& beta_k, const RVector& g_norms,
                                 const RVector& weight, double multiplier, double sigma2, const RVector& p);

/// Betas and detector norms frozen at a starting allocation.
struct EesmStart {
  RVector beta_k;
  RVector g_norms;
};

EesmStart eesm_start(const ChannelSet& channels, const Precoder& pre, const PowerAllocation& start,
                     DetectorType detector, double det_reg, const McsTable& table, double sigma2);

/// Full EESM allocation under TPC: equal PA start, frozen betas, closed
/// form; falls back to the start point when the closed form is infeasible.
PowerAllocation eesm_tpc(const ChannelSet& channels, const Precoder& pre, DetectorType detector, double det_reg,
                         const McsTable& table, double sigma2, double P_total);

// ---- per-antenna constraint: intersection methods ----------------------

/// Equal rho scaled so the most loaded antenna sits exactly at P/T.
RVector papc_start_point(const Precoder& pre, double P_total);

/// Antenna with the largest transmitted power sum_l a_tl p_l (lowest index on ties).
int binding_antenna(const Precoder& pre, const RVector& p);

enum class IntersectionPoint { Start, HyperplaneOptimum, RayIntersection };

struct IntersectionResult {
  RVector p;
  IntersectionPoint point = IntersectionPoint::Start;
  int binding_antenna = -1;
  /// Antenna whose hyperplane stopped the ray, or -1.
  int crossing_antenna = -1;
  double alpha = 0.0;
};

/// Walks p1 + alpha (p2 - p1) from Point 1 (on hyperplane i) towards Point 2
/// and stops at the first other antenna hyperplane; returns Point 2 itself
/// when it is feasible.
IntersectionResult intersect_ray(const Precoder& pre, const RVector& p1, int antenna, const RVector& p2,
                                 double P_total);

/// Geometric-mean objective: Point 2 is the single-active-antenna optimum.
IntersectionResult intersection_method_geo(const Precoder& pre, double P_total);

/// EESM objective: Point 2 is the hyperplane closed form with betas frozen
/// at Point 1.
IntersectionResult intersection_method_eesm(const ChannelSet& channels, const Precoder& pre, DetectorType detector,
                                            double det_reg, const McsTable& table, double sigma2, double P_total);

// ---- per-antenna constraint: KKT active-set enumeration ----------------

struct KktResiduals {
  double stationarity = 0.0;     // max_l |p_l (A^T lambda)_l - 1|
  double complementarity = 0.0;  // max_t |lambda_t ((A p)_t - P/T)| / (P/T)
  double feasibility = 0.0;      // max_t max(0, (A p)_t - P/T) / (P/T)
};

struct KktCandidate {
  std::vector<int> active_set;
  double objective = 0.0;
};

struct KktSolution {
  RVector p;
  RVector multipliers;  // length T
  std::vector<int> active_set;
  KktResiduals residuals;
  double objective = 0.0;  // sum_l ln p_l
  /// Every certified candidate, in enumeration order.
  std::vector<KktCandidate> alternatives;
};

struct KktOptions {
  std::size_t max_subsets = 10000;
  int newton_max_iters = 100;
  double newton_damping = 0.5;
  double multiplier_tol = 1e-10;
  double feasibility_tol = 1e-9;
};

/// Maximises sum_l ln p_l subject to A p <= P/T (A = |W'|^2 elementwise) by
/// enumerating candidate active sets of size 1..min(L, T).
///
/// Throws std::invalid_argument when the enumeration exceeds
/// options.max_subsets and NumericalError when no candidate is certified.
KktSolution papc_kkt_solve(const RMatrix& A, double P_total, const KktOptions& options = {});
KktSolution papc_kkt_solve(const Precoder& pre, double P_total, const KktOptions& options = {});

}  // namespace mupa

#endif  // MUPA_POWER_ALLOCATION_HPP
