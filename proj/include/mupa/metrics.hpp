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

#ifndef MUPA_METRICS_HPP
#define MUPA_METRICS_HPP

#include <cmath>
#include <span>
#include <variant>

#include "mupa/channel.hpp"
#include "mupa/detection.hpp"
#include "mupa/mcs_table.hpp"

namespace mupa {

inline double to_db(double x) { return 10.0 * std::log10(x); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

/// Noise variance and total transmit power; their ratio is the small
/// parameter of the asymptotic analysis.
struct NoiseModel {
  double sigma2 = 1.0;
  double P_total = 1.0;

  static NoiseModel from_snr_db(double snr_db, double P_total);
  double noise_power_ratio() const { return sigma2 / P_total; }
  void validate() const;
};

struct GeometricMean {};

struct EesmFixedBeta {
  double beta = 1.6;
};

struct EesmTableDriven {
  McsTable table;
  int max_iters = 50;
  double tol = 1e-12;
};

using EffSinrModel = std::variant<GeometricMean, EesmFixedBeta, EesmTableDriven>;

/// |g H_k w_l|^2 / (sum_{i != l} |g H_k w_i|^2 + sigma2 ||g||^2), where the
/// interference sum runs over every other column of W, intra- and inter-user.
double per_layer_sinr(const CMatrix& W, const CMatrix& H_k, const CRowVector& g, int layer, double sigma2);

/// SINR of every layer in the system (length L).
RVector layer_sinrs(const CMatrix& W, const ChannelSet& channels, const DetectionSet& det, double sigma2);

/// (prod SINR_l)^(1/L_k); zero if any SINR is zero.
double geo_mean_eff_sinr(std::span<const double> sinrs);

/// -beta ln(mean exp(-SINR_l / beta)), evaluated around min SINR so the
/// exponentials never underflow.
double eesm_eff_sinr(std::span<const double> sinrs, double beta);

/// Largest MCS m with se[m] <= log2(1 + eff), clamped to [0, 27]; inputs
/// at or below -5 dB map to MCS 0 and at or above 23 dB to MCS 27.
int mcs_select(double eff_sinr_db, const McsTable& table);

struct EesmFixedPoint {
  double eff_sinr = 0.0;
  int mcs = 0;
  double beta = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Iteration alternated between two MCS values; the lower one was kept.
  bool cycled = false;
};

/// Self-consistent EESM: start from the geometric mean, then iterate
/// eff -> MCS -> beta -> eff until the MCS index repeats.
EesmFixedPoint eesm_fixed_point(std::span<const double> sinrs, const McsTable& table, int max_iters = 50,
                                double tol = 1e-12);

double user_eff_sinr(const EffSinrModel& model, std::span<const double> sinrs);

/// Effective SINR of each user from the per-layer SINRs (length K).
RVector user_eff_sinrs(const EffSinrModel& model, const RVector& sinrs, const SystemDims& dims);

/// sum_k L_k log2(1 + eff_k).
double spectral_efficiency(std::span<const double> eff_sinrs, std::span<const int> layers);

/// sum_l log2 SINR_l, the high-SINR leading term of the geometric-mean SE.
/// Throws std::invalid_argument on a nonpositive SINR.
double log_se_leading_term(std::span<const double> sinrs);

/// Single-user SINR (1 / sigma2) (prod s_l^2 p_l)^(1/L_k), ignoring other users.
double single_user_sinr(const RVector& singular_values, std::span<const double> p_k, double sigma2);

}  // namespace mupa

#endif  // MUPA_METRICS_HPP
