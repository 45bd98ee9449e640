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

#ifndef MUPA_ORACLE_HPP
#define MUPA_ORACLE_HPP

// Brute-force reference implementations for tests. Nothing here calls into
// the mupa library; formulas are re-derived from scratch on purpose.

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace mupa::oracle {

using Vec = Eigen::VectorXd;
using Objective = std::function<double(const Vec&)>;
using Predicate = std::function<bool(const Vec&)>;

/// Tensor grid; `steps[d]` intervals, i.e. steps[d] + 1 points, per axis,
/// so doubling the steps nests the coarser grid.
struct GridSpec {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> steps;

  static GridSpec uniform(int dims, double lower, double upper, int steps);
  int dims() const { return static_cast<int>(lower.size()); }
  double cell(int d) const { return (upper[d] - lower[d]) / steps[d]; }
  void validate() const;
};

struct GridResult {
  Vec argmax;
  double value = 0.0;
  std::size_t evaluated = 0;
};

/// Exhaustive search; the lexicographically first maximiser wins ties.
/// Throws std::runtime_error if no grid point is feasible.
GridResult grid_maximize(const Objective& objective, const Predicate& feasible, const GridSpec& spec);

/// Central differences with step h; throws std::runtime_error on a
/// non-finite objective value in the stencil.
Vec finite_diff_gradient(const Objective& objective, const Vec& point, double h);

/// Singular values of H in descending order, from the eigenvalues of H H^H.
Vec singular_values(const Eigen::MatrixXcd& H);

/// |g H w_l|^2 over interference from all other columns plus sigma2 ||g||^2.
double layer_sinr(const Eigen::MatrixXcd& W, const Eigen::MatrixXcd& H, const Eigen::RowVectorXcd& g, int layer,
                  double sigma2);

/// -beta ln((1/n) sum exp(-s / beta)), without any stabilisation.
double eesm(const std::vector<double>& sinrs, double beta);

/// (prod s)^(1/n).
double geometric_mean(const std::vector<double>& sinrs);

/// -sum_k L_k ln(1 + eesm_k) + multiplier (weight . p - budget), where the
/// SINR of layer l is p_l / (sigma2 g_l) and layers are grouped per user
/// by `layers`.
double eesm_lagrangian(const std::vector<int>& layers, const Vec& beta_k, const Vec& g_norms, const Vec& weight,
                       double multiplier, double budget, double sigma2, const Vec& p);

/// sum_l ln p_l, or -inf if some p_l <= 0.
double log_objective(const Vec& p);

/// A p <= b (1 + tol) componentwise.
bool polytope_feasible(const Eigen::MatrixXd& A, double b, const Vec& p, double tol = 0.0);

}  // namespace mupa::oracle

#endif  // MUPA_ORACLE_HPP
