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

#include <cmath>
#include <span>
#include <stdexcept>

#include "mupa/metrics.hpp"

namespace mupa {

namespace {

void check_layers(const SystemDims& dims, const RVector& v, const char* what) {
  if (v.size() != dims.total_layers()) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

std::span<const double> block(const RVector& v, const SystemDims& dims, int k) {
  return {v.data() + dims.layer_offset(k), static_cast<std::size_t>(dims.layers[k])};
}

}  // namespace

void PowerConstraint::validate() const {
  if (!(P_total > 0.0) || !std::isfinite(P_total)) throw std::invalid_argument("PowerConstraint: P_total must be positive");
  if (T < 1) throw std::invalid_argument("PowerConstraint: T must be positive");
}

PowerAllocation equal_pa_tpc(const Precoder& pre, double P_total) {
  if (!(P_total > 0.0)) throw std::invalid_argument("equal_pa_tpc: P_total must be positive");
  if ((pre.col_norms.array() <= 0.0).any()) throw std::invalid_argument("equal_pa_tpc: zero-norm precoder column");
  return PowerAllocation::from_rho(pre, RVector::Constant(pre.layers(), P_total / pre.layers()));
}

RVector scale_to_constraint(const Precoder& pre, const RVector& p, const PowerConstraint& c) {
  c.validate();
  const double used = c.mode == ConstraintMode::TPC ? p.dot(pre.col_norms.cwiseAbs2())
                                                     : antenna_powers(pre, p).maxCoeff();
  if (!(used > 0.0)) throw std::invalid_argument("scale_to_constraint: allocation transmits no power");
  return p * (c.limit() / used);
}

PowerAllocation native_pa(const Precoder& pre, const PowerConstraint& c) {
  return PowerAllocation::from_p(pre, scale_to_constraint(pre, RVector::Ones(pre.layers()), c));
}

RVector normalized_detector_norms(const ChannelSet& channels, const Precoder& pre, const DetectionSet& det) {
  const SystemDims& dims = channels.dims;
  if (det.G.size() != static_cast<std::size_t>(dims.users())) {
    throw std::invalid_argument("normalized_detector_norms: detector count mismatch");
  }
  RVector out(dims.total_layers());
  for (int k = 0; k < dims.users(); ++k) {
    const int off = dims.layer_offset(k);
    const CMatrix& G = det.G[static_cast<std::size_t>(k)];
    const CMatrix own = G * channels.users[k].H * pre.Wp.middleCols(off, dims.layers[k]);
    for (int i = 0; i < dims.layers[k]; ++i) {
      const double gain = std::norm(own(i, i));
      if (!(gain > 0.0)) throw NumericalError("normalized_detector_norms: detector orthogonal to its layer");
      out(off + i) = G.row(i).squaredNorm() / gain;
    }
  }
  return out;
}

RVector freeze_betas(const RVector& layer_sinrs, const SystemDims& dims, const McsTable& table) {
  check_layers(dims, layer_sinrs, "freeze_betas");
  RVector beta(dims.users());
  for (int k = 0; k < dims.users(); ++k) beta(k) = eesm_fixed_point(block(layer_sinrs, dims, k), table).beta;
  return beta;
}

EesmPaResult eesm_closed_form(const SystemDims& dims, const RVector& beta_k, const RVector& g_norms,
                              const RVector& weight, double budget, double sigma2) {
  check_layers(dims, g_norms, "eesm_closed_form");
  check_layers(dims, weight, "eesm_closed_form");
  if (beta_k.size() != dims.users()) throw std::invalid_argument("eesm_closed_form: beta length mismatch");
  if (!(sigma2 > 0.0) || !(budget > 0.0)) throw std::invalid_argument("eesm_closed_form: sigma2 and budget must be positive");
  if (!(g_norms.array() > 0.0).all() || !g_norms.allFinite()) {
    throw NumericalError("eesm_closed_form: degenerate detector norms");
  }
  const int L = dims.total_layers();
  EesmPaResult out;
  out.ctx.beta_k = beta_k;
  out.ctx.g_norms = g_norms;
  out.p = RVector::Zero(L);
  // A layer with zero weight is unconstrained by this budget: no finite optimum.
  if (!(weight.array() > 0.0).all()) return out;

  const RVector c = g_norms.cwiseProduct(weight);
  RVector d(dims.users());
  out.ctx.f.resize(L);
  for (int k = 0; k < dims.users(); ++k) {
    const int off = dims.layer_offset(k);
    d(k) = c.segment(off, dims.layers[k]).mean();
    for (int i = 0; i < dims.layers[k]; ++i) out.ctx.f(off + i) = beta_k(k) * std::log(c(off + i) / d(k)) + 1.0;
  }
  const double num = budget / (sigma2 * L) + c.dot(out.ctx.f) / L;
  out.multiplier = 1.0 / (sigma2 * num);
  for (int k = 0; k < dims.users(); ++k) {
    const int off = dims.layer_offset(k);
    for (int i = 0; i < dims.layers[k]; ++i) {
      out.p(off + i) = sigma2 * g_norms(off + i) * (num / d(k) - out.ctx.f(off + i));
    }
  }
  out.feasible = (out.p.array() > 0.0).all();
  if (!out.feasible) return out;

  out.ctx.x.resize(L);
  out.ctx.X.resize(dims.users());
  for (int k = 0; k < dims.users(); ++k) {
    const int off = dims.layer_offset(k);
    for (int i = 0; i < dims.layers[k]; ++i) {
      out.ctx.x(off + i) = std::exp(-out.p(off + i) / (beta_k(k) * sigma2 * g_norms(off + i)));
    }
    out.ctx.X(k) = out.ctx.x.segment(off, dims.layers[k]).mean();
  }
  return out;
}

EesmPaResult eesm_tpc_closed_form(const SystemDims& dims, const Precoder& pre, const RVector& beta_k,
                                  const RVector& g_norms, double sigma2, double P_total) {
  return eesm_closed_form(dims, beta_k, g_norms, pre.col_norms.cwiseAbs2(), P_total, sigma2);
}

EesmPaResult eesm_hyperplane_optimum(const SystemDims& dims, const Precoder& pre, int antenna,
                                     const RVector& beta_k, const RVector& g_norms, double sigma2,
                                     double P_total) {
  if (antenna < 0 || antenna >= pre.antennas()) throw std::invalid_argument("eesm_hyperplane_optimum: bad antenna");
  return eesm_closed_form(dims, beta_k, g_norms, pre.row_sq.row(antenna).transpose(), P_total / pre.antennas(),
                          sigma2);
}

double eesm_fixed_beta_se(const SystemDims& dims, const RVector& beta_k, const RVector& g_norms, double sigma2,
                          const RVector& p) {
  check_layers(dims, p, "eesm_fixed_beta_se");
  const RVector sinr = p.cwiseQuotient(g_norms) / sigma2;
  double se = 0.0;
  for (int k = 0; k < dims.users(); ++k) {
    se += dims.layers[k] * std::log2(1.0 + eesm_eff_sinr(block(sinr, dims, k), beta_k(k)));
  }
  return se;
}

RVector eesm_lagrangian_gradient(const SystemDims& dims, const RVector& beta_k, const RVector& g_norms,
                                 const RVector& weight, double multiplier, double sigma2, const RVector& p) {
  check_layers(dims, p, "eesm_lagrangian_gradient");
  const RVector sinr = p.cwiseQuotient(g_norms) / sigma2;
  RVector grad(p.size());
  for (int k = 0; k < dims.users(); ++k) {
    const int off = dims.layer_offset(k);
    const int lk = dims.layers[k];
    const double beta = beta_k(k);
    // x_l / X_k evaluated relative to the weakest layer; -beta ln X_k = eff_k.
    const double lo = sinr.segment(off, lk).minCoeff();
    const RVector xs = (-(sinr.segment(off, lk).array() - lo) / beta).exp().matrix();
    const double Xs = xs.mean();
    const double eff = eesm_eff_sinr(block(sinr, dims, k), beta);
    for (int i = 0; i < lk; ++i) {
      grad(off + i) = -(xs(i) / Xs) / (sigma2 * g_norms(off + i) * (1.0 + eff)) + multiplier * weight(off + i);
    }
  }
  return grad;
}

EesmStart eesm_start(const ChannelSet& channels, const Precoder& pre, const PowerAllocation& start,
                     DetectorType detector, double det_reg, const McsTable& table, double sigma2) {
  const DetectionSet det = detect(detector, channels, pre, start, det_reg);
  const RVector sinrs = layer_sinrs(apply_power(pre, start), channels, det, sigma2);
  return {freeze_betas(sinrs, channels.dims, table), normalized_detector_norms(channels, pre, det)};
}

PowerAllocation eesm_tpc(const ChannelSet& channels, const Precoder& pre, DetectorType detector, double det_reg,
                         const McsTable& table, double sigma2, double P_total) {
  PowerAllocation start = equal_pa_tpc(pre, P_total);
  const EesmStart st = eesm_start(channels, pre, start, detector, det_reg, table, sigma2);
  const EesmPaResult r = eesm_tpc_closed_form(channels.dims, pre, st.beta_k, st.g_norms, sigma2, P_total);
  if (!r.feasible) return start;
  return PowerAllocation::from_p(pre, scale_to_constraint(pre, r.p, {ConstraintMode::TPC, P_total, pre.antennas()}));
}

}  // namespace mupa
