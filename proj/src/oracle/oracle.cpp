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

#include "mupa/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mupa::oracle {

GridSpec GridSpec::uniform(int dims, double lower, double upper, int steps) {
  GridSpec g;
  g.lower.assign(static_cast<std::size_t>(dims), lower);
  g.upper.assign(static_cast<std::size_t>(dims), upper);
  g.steps.assign(static_cast<std::size_t>(dims), steps);
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (lower.empty() || lower.size() != upper.size() || lower.size() != steps.size()) {
    throw std::invalid_argument("GridSpec: inconsistent dimensions");
  }
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d])) {
      throw std::invalid_argument("GridSpec: bounds must be finite with lower < upper");
    }
    if (steps[d] < 2) throw std::invalid_argument("GridSpec: steps must be >= 2");
  }
}

GridResult grid_maximize(const Objective& objective, const Predicate& feasible, const GridSpec& spec) {
  spec.validate();
  const int n = spec.dims();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Vec x(n);
  GridResult best;
  bool found = false;
  while (true) {
    for (int d = 0; d < n; ++d) x(d) = spec.lower[d] + idx[d] * spec.cell(d);
    if (feasible(x)) {
      ++best.evaluated;
      const double v = objective(x);
      if (!found || v > best.value) {
        best.value = v;
        best.argmax = x;
        found = true;
      }
    }
    // Odometer with the last axis fastest: lexicographic order.
    int d = n - 1;
    while (d >= 0 && idx[d] == spec.steps[d]) idx[d--] = 0;
    if (d < 0) break;
    ++idx[d];
  }
  if (!found) throw std::runtime_error("grid_maximize: no feasible grid point");
  return best;
}

Vec finite_diff_gradient(const Objective& objective, const Vec& point, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_gradient: h must be positive");
  Vec grad(point.size());
  Vec x = point;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    x(i) = point(i) + h;
    const double fp = objective(x);
    x(i) = point(i) - h;
    const double fm = objective(x);
    x(i) = point(i);
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw std::runtime_error("finite_diff_gradient: non-finite objective in stencil");
    }
    grad(i) = (fp - fm) / (2.0 * h);
  }
  return grad;
}

Vec singular_values(const Eigen::MatrixXcd& H) {
  const Eigen::MatrixXcd gram = H * H.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  const Vec ev = eig.eigenvalues();
  Vec s(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) s(i) = std::sqrt(std::max(ev(ev.size() - 1 - i), 0.0));
  return s;
}

double layer_sinr(const Eigen::MatrixXcd& W, const Eigen::MatrixXcd& H, const Eigen::RowVectorXcd& g, int layer,
                  double sigma2) {
  double signal = 0.0;
  double interference = 0.0;
  for (Eigen::Index i = 0; i < W.cols(); ++i) {
    const std::complex<double> gain = (g * H * W.col(i))(0, 0);
    if (i == layer) {
      signal = std::norm(gain);
    } else {
      interference += std::norm(gain);
    }
  }
  return signal / (interference + sigma2 * g.squaredNorm());
}

double eesm(const std::vector<double>& sinrs, double beta) {
  double acc = 0.0;
  for (double s : sinrs) acc += std::exp(-s / beta);
  return -beta * std::log(acc / static_cast<double>(sinrs.size()));
}

double geometric_mean(const std::vector<double>& sinrs) {
  double prod = 1.0;
  for (double s : sinrs) prod *= s;
  return std::pow(prod, 1.0 / static_cast<double>(sinrs.size()));
}

double eesm_lagrangian(const std::vector<int>& layers, const Vec& beta_k, const Vec& g_norms, const Vec& weight,
                       double multiplier, double budget, double sigma2, const Vec& p) {
  double value = 0.0;
  Eigen::Index l = 0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    std::vector<double> s;
    for (int i = 0; i < layers[k]; ++i, ++l) s.push_back(p(l) / (sigma2 * g_norms(l)));
    value -= layers[k] * std::log(1.0 + eesm(s, beta_k(static_cast<Eigen::Index>(k))));
  }
  return value + multiplier * (weight.dot(p) - budget);
}

double log_objective(const Vec& p) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > 0.0)) return -std::numeric_limits<double>::infinity();
    acc += std::log(p(i));
  }
  return acc;
}

bool polytope_feasible(const Eigen::MatrixXd& A, double b, const Vec& p, double tol) {
  return ((A * p).array() <= b * (1.0 + tol)).all();
}

}  // namespace mupa::oracle
