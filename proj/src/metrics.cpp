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

#include "mupa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mupa {

namespace {

constexpr double kServiceFloorDb = -5.0;
constexpr double kServiceCeilingDb = 23.0;

}  // namespace

NoiseModel NoiseModel::from_snr_db(double snr_db, double P_total) {
  NoiseModel n{P_total / from_db(snr_db), P_total};
  n.validate();
  return n;
}

void NoiseModel::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2) || !(P_total > 0.0) || !std::isfinite(P_total)) {
    throw std::invalid_argument("NoiseModel: sigma2 and P_total must be positive and finite");
  }
}

double per_layer_sinr(const CMatrix& W, const CMatrix& H_k, const CRowVector& g, int layer, double sigma2) {
  if (layer < 0 || layer >= W.cols()) throw std::invalid_argument("per_layer_sinr: layer out of range");
  const CRowVector gains = g * H_k * W;
  const double signal = std::norm(gains(layer));
  const double interference = gains.cwiseAbs2().sum() - signal;
  return signal / (std::max(interference, 0.0) + sigma2 * g.squaredNorm());
}

RVector layer_sinrs(const CMatrix& W, const ChannelSet& channels, const DetectionSet& det, double sigma2) {
  const SystemDims& dims = channels.dims;
  RVector out(dims.total_layers());
  for (int k = 0; k < dims.users(); ++k) {
    const int off = dims.layer_offset(k);
    const CMatrix& G = det.G.at(static_cast<std::size_t>(k));
    const CMatrix gains = G * channels.users[k].H * W;
    for (int i = 0; i < dims.layers[k]; ++i) {
      const double signal = std::norm(gains(i, off + i));
      const double interference = gains.row(i).cwiseAbs2().sum() - signal;
      out(off + i) = signal / (std::max(interference, 0.0) + sigma2 * G.row(i).squaredNorm());
    }
  }
  return out;
}

double geo_mean_eff_sinr(std::span<const double> sinrs) {
  if (sinrs.empty()) throw std::invalid_argument("geo_mean_eff_sinr: empty input");
  double log_sum = 0.0;
  for (double s : sinrs) {
    if (s < 0.0) throw std::invalid_argument("geo_mean_eff_sinr: negative SINR");
    if (s == 0.0) return 0.0;
    log_sum += std::log(s);
  }
  return std::exp(log_sum / static_cast<double>(sinrs.size()));
}

double eesm_eff_sinr(std::span<const double> sinrs, double beta) {
  if (sinrs.empty()) throw std::invalid_argument("eesm_eff_sinr: empty input");
  if (!(beta > 0.0)) throw std::invalid_argument("eesm_eff_sinr: beta must be positive");
  const double lo = *std::min_element(sinrs.begin(), sinrs.end());
  double acc = 0.0;
  for (double s : sinrs) acc += std::exp(-(s - lo) / beta);
  return lo - beta * std::log(acc / static_cast<double>(sinrs.size()));
}

int mcs_select(double eff_sinr_db, const McsTable& table) {
  if (!(eff_sinr_db > kServiceFloorDb)) return 0;
  if (eff_sinr_db >= kServiceCeilingDb) return kMcsCount - 1;
  const double capacity = std::log2(1.0 + from_db(eff_sinr_db));
  const auto it = std::upper_bound(table.se.begin(), table.se.end(), capacity);
  return std::max(0, static_cast<int>(it - table.se.begin()) - 1);
}

EesmFixedPoint eesm_fixed_point(std::span<const double> sinrs, const McsTable& table, int max_iters, double tol) {
  if (max_iters < 1) throw std::invalid_argument("eesm_fixed_point: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("eesm_fixed_point: tol must be positive");

  EesmFixedPoint fp;
  double eff = geo_mean_eff_sinr(sinrs);
  int mcs = mcs_select(to_db(eff), table);
  int previous = -1;
  for (int it = 1; it <= max_iters; ++it) {
    const double beta = table.beta[static_cast<std::size_t>(mcs)];
    const double next_eff = eesm_eff_sinr(sinrs, beta);
    const int next = mcs_select(to_db(next_eff), table);
    fp = {next_eff, mcs, beta, it, false, false};
    if (next == mcs && std::abs(next_eff - eff) <= tol * std::max(1.0, std::abs(next_eff))) {
      fp.converged = true;
      return fp;
    }
    if (next != mcs && next == previous) {
      const int low = std::min(mcs, next);
      fp.mcs = low;
      fp.beta = table.beta[static_cast<std::size_t>(low)];
      fp.eff_sinr = eesm_eff_sinr(sinrs, fp.beta);
      fp.cycled = true;
      return fp;
    }
    if (next != mcs) previous = mcs;
    mcs = next;
    eff = next_eff;
  }
  return fp;
}

double user_eff_sinr(const EffSinrModel& model, std::span<const double> sinrs) {
  return std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, GeometricMean>) {
          return geo_mean_eff_sinr(sinrs);
        } else if constexpr (std::is_same_v<M, EesmFixedBeta>) {
          return eesm_eff_sinr(sinrs, m.beta);
        } else {
          return eesm_fixed_point(sinrs, m.table, m.max_iters, m.tol).eff_sinr;
        }
      },
      model);
}

RVector user_eff_sinrs(const EffSinrModel& model, const RVector& sinrs, const SystemDims& dims) {
  if (sinrs.size() != dims.total_layers()) throw std::invalid_argument("user_eff_sinrs: length mismatch");
  RVector eff(dims.users());
  for (int k = 0; k < dims.users(); ++k) {
    eff(k) = user_eff_sinr(model, std::span<const double>(sinrs.data() + dims.layer_offset(k),
                                                          static_cast<std::size_t>(dims.layers[k])));
  }
  return eff;
}

double spectral_efficiency(std::span<const double> eff_sinrs, std::span<const int> layers) {
  if (eff_sinrs.size() != layers.size()) throw std::invalid_argument("spectral_efficiency: length mismatch");
  double se = 0.0;
  for (std::size_t k = 0; k < eff_sinrs.size(); ++k) {
    if (eff_sinrs[k] < 0.0) throw std::invalid_argument("spectral_efficiency: negative SINR");
    se += layers[k] * std::log2(1.0 + eff_sinrs[k]);
  }
  return se;
}

double log_se_leading_term(std::span<const double> sinrs) {
  double acc = 0.0;
  for (double s : sinrs) {
    if (!(s > 0.0)) throw std::invalid_argument("log_se_leading_term: zero SINR");
    acc += std::log2(s);
  }
  return acc;
}

double single_user_sinr(const RVector& singular_values, std::span<const double> p_k, double sigma2) {
  if (static_cast<Eigen::Index>(p_k.size()) != singular_values.size()) {
    throw std::invalid_argument("single_user_sinr: length mismatch");
  }
  double log_sum = 0.0;
  for (std::size_t l = 0; l < p_k.size(); ++l) {
    const double v = singular_values(static_cast<Eigen::Index>(l)) * singular_values(static_cast<Eigen::Index>(l)) * p_k[l];
    if (!(v > 0.0)) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(p_k.size())) / sigma2;
}

}  // namespace mupa
