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

#include "mupa/power_allocation.hpp"

#include <algorithm>
#include <stdexcept>

namespace mupa {

namespace {

// Guards the final answer against rounding on the ray: pulls p back inside
// every antenna budget without moving it when it already fits.
RVector clamp_to_papc(const Precoder& pre, RVector p, double P_total) {
  const double limit = P_total / pre.antennas();
  const double worst = antenna_powers(pre, p).maxCoeff();
  if (worst > limit) p *= limit / worst;
  return p;
}

}  // namespace

RVector papc_start_point(const Precoder& pre, double P_total) {
  if (!(P_total > 0.0)) throw std::invalid_argument("papc_start_point: P_total must be positive");
  if ((pre.col_norms.array() <= 0.0).any()) throw std::invalid_argument("papc_start_point: zero-norm precoder column");
  const RVector p = (P_total / pre.antennas()) * pre.col_norms.cwiseAbs2().cwiseInverse();
  return scale_to_constraint(pre, p, {ConstraintMode::PAPC, P_total, pre.antennas()});
}

int binding_antenna(const Precoder& pre, const RVector& p) {
  const RVector q = antenna_powers(pre, p);
  int best = 0;
  for (int t = 1; t < q.size(); ++t) {
    if (q(t) > q(best)) best = t;
  }
  return best;
}

IntersectionResult intersect_ray(const Precoder& pre, const RVector& p1, int antenna, const RVector& p2,
                                 double P_total) {
  const double limit = P_total / pre.antennas();
  const RVector q1 = antenna_powers(pre, p1);
  const RVector q2 = antenna_powers(pre, p2);

  IntersectionResult out;
  out.binding_antenna = antenna;
  double alpha = 1.0;
  for (int t = 0; t < pre.antennas(); ++t) {
    if (t == antenna || !(q2(t) > limit)) continue;
    // q1(t) <= limit < q2(t), so the crossing lies in [0, 1).
    const double a = std::clamp((limit - q1(t)) / (q2(t) - q1(t)), 0.0, 1.0);
    if (out.crossing_antenna < 0 || a < alpha) {
      alpha = a;
      out.crossing_antenna = t;
    }
  }
  if (out.crossing_antenna < 0) {
    out.point = IntersectionPoint::HyperplaneOptimum;
    out.alpha = 1.0;
    out.p = clamp_to_papc(pre, p2, P_total);
    return out;
  }
  out.point = IntersectionPoint::RayIntersection;
  out.alpha = alpha;
  out.p = clamp_to_papc(pre, (p1 + alpha * (p2 - p1)).cwiseMax(0.0), P_total);
  return out;
}

IntersectionResult intersection_method_geo(const Precoder& pre, double P_total) {
  const RVector p1 = papc_start_point(pre, P_total);
  const int i = binding_antenna(pre, p1);
  const RVector a = pre.row_sq.row(i).transpose();
  if (!(a.array() > 0.0).all()) return {p1, IntersectionPoint::Start, i, -1, 0.0};
  // Single active antenna i: p_l = P / (T L a_il).
  const RVector p2 = (P_total / (pre.antennas() * static_cast<double>(pre.layers()))) * a.cwiseInverse();
  return intersect_ray(pre, p1, i, p2, P_total);
}

IntersectionResult intersection_method_eesm(const ChannelSet& channels, const Precoder& pre, DetectorType detector,
                                            double det_reg, const McsTable& table, double sigma2, double P_total) {
  const RVector p1 = papc_start_point(pre, P_total);
  const int i = binding_antenna(pre, p1);
  const EesmStart st = eesm_start(channels, pre, PowerAllocation::from_p(pre, p1), detector, det_reg, table, sigma2);
  const EesmPaResult r = eesm_hyperplane_optimum(channels.dims, pre, i, st.beta_k, st.g_norms, sigma2, P_total);
  if (!r.feasible) return {p1, IntersectionPoint::Start, i, -1, 0.0};
  return intersect_ray(pre, p1, i, r.p, P_total);
}

}  // namespace mupa
