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

#include "mupa/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace mupa {

// ---- SystemDims ---------------------------------------------------------

SystemDims SystemDims::uniform(int T, int K, int rx_per_user, int layers_per_user) {
  SystemDims d;
  d.T = T;
  d.rx.assign(static_cast<std::size_t>(std::max(K, 0)), rx_per_user);
  d.layers.assign(static_cast<std::size_t>(std::max(K, 0)), layers_per_user);
  return d;
}

int SystemDims::total_rx() const { return std::accumulate(rx.begin(), rx.end(), 0); }

int SystemDims::total_layers() const { return std::accumulate(layers.begin(), layers.end(), 0); }

int SystemDims::layer_offset(int k) const {
  return std::accumulate(layers.begin(), layers.begin() + k, 0);
}

int SystemDims::rx_offset(int k) const { return std::accumulate(rx.begin(), rx.begin() + k, 0); }

std::vector<int> SystemDims::layer_owner() const {
  std::vector<int> owner;
  owner.reserve(static_cast<std::size_t>(total_layers()));
  for (int k = 0; k < users(); ++k) owner.insert(owner.end(), static_cast<std::size_t>(layers[k]), k);
  return owner;
}

void SystemDims::validate() const {
  if (T < 1) throw std::invalid_argument("SystemDims: T must be positive");
  if (rx.empty()) throw std::invalid_argument("SystemDims: at least one user required");
  if (rx.size() != layers.size()) throw std::invalid_argument("SystemDims: rx and layers length differ");
  for (std::size_t k = 0; k < rx.size(); ++k) {
    if (layers[k] < 1 || layers[k] > rx[k]) {
      throw std::invalid_argument("SystemDims: need 1 <= L_k <= R_k for user " + std::to_string(k));
    }
  }
  if (total_rx() > T) throw std::invalid_argument("SystemDims: need R <= T");
}

// ---- generators ---------------------------------------------------------

namespace {

CMatrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      M(i, j) = cdouble(re, im);
    }
  }
  return M;
}

RMatrix exponential_correlation_sqrt(int n, double corr) {
  RMatrix R(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) R(i, j) = std::pow(corr, std::abs(i - j));
  }
  return Eigen::LLT<RMatrix>(R).matrixL();
}

/// Orthonormal basis of the row space of M (rows of the result).
CMatrix orthonormal_rows(const CMatrix& M) {
  Eigen::HouseholderQR<CMatrix> qr(M.adjoint());
  const CMatrix Q = qr.householderQ() * CMatrix::Identity(M.cols(), M.rows());
  return Q.adjoint();
}

CMatrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(rng, n, n));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

}  // namespace

std::vector<UserChannel> generate_rayleigh(const SystemDims& dims, std::uint64_t seed) {
  dims.validate();
  std::mt19937_64 rng(seed);
  std::vector<UserChannel> users;
  users.reserve(dims.rx.size());
  for (int r : dims.rx) users.push_back({gaussian_matrix(rng, r, dims.T)});
  return users;
}

std::vector<UserChannel> generate_correlated(const SystemDims& dims, double corr, std::uint64_t seed) {
  if (!(corr >= 0.0 && corr < 1.0)) throw std::invalid_argument("generate_correlated: corr out of range [0, 1)");
  std::vector<UserChannel> users = generate_rayleigh(dims, seed);
  if (corr == 0.0) return users;
  const RMatrix tx_sqrt = exponential_correlation_sqrt(dims.T, corr);
  for (UserChannel& u : users) {
    const RMatrix rx_sqrt = exponential_correlation_sqrt(static_cast<int>(u.H.rows()), corr);
    u.H = rx_sqrt.cast<cdouble>() * u.H * tx_sqrt.transpose().cast<cdouble>();
  }
  return users;
}

std::vector<UserChannel> generate_low_correlation(const SystemDims& dims, double coupling,
                                                  std::uint64_t seed) {
  dims.validate();
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw std::invalid_argument("generate_low_correlation: coupling must be finite and nonnegative");
  }
  std::mt19937_64 rng(seed);
  const int R = dims.total_rx();
  const CMatrix basis = orthonormal_rows(gaussian_matrix(rng, R, dims.T));
  const double scale = coupling / std::sqrt(static_cast<double>(dims.T));
  std::uniform_real_distribution<double> spread(0.5, 1.5);

  std::vector<UserChannel> users;
  users.reserve(dims.rx.size());
  for (int k = 0; k < dims.users(); ++k) {
    const int rk = dims.rx[k];
    const CMatrix noise = gaussian_matrix(rng, rk, dims.T);
    const CMatrix rows = orthonormal_rows(basis.middleRows(dims.rx_offset(k), rk) + scale * noise);
    const CMatrix left = random_unitary(rng, rk);
    std::vector<double> s(static_cast<std::size_t>(rk));
    for (double& v : s) v = std::sqrt(static_cast<double>(dims.T)) * spread(rng);
    std::sort(s.begin(), s.end(), std::greater<>());
    const RVector sv = Eigen::Map<const RVector>(s.data(), rk);
    users.push_back({left.adjoint() * sv.cast<cdouble>().asDiagonal() * rows});
  }
  return users;
}

double interference_correlation_norm(const SystemDims& dims, std::span<const UserChannel> users) {
  std::vector<TruncatedSvd> svds;
  svds.reserve(users.size());
  for (std::size_t k = 0; k < users.size(); ++k) svds.push_back(truncated_svd(users[k], dims.layers[k]));
  const MainDecomposition md = main_decomposition(svds);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(md.C, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

// ---- decomposition ------------------------------------------------------

TruncatedSvd truncated_svd(const UserChannel& user, int layers) {
  const CMatrix& H = user.H;
  if (layers < 1 || layers > std::min(H.rows(), H.cols())) {
    throw std::invalid_argument("truncated_svd: layer count out of range");
  }
  if (!H.allFinite()) throw std::invalid_argument("truncated_svd: non-finite channel entry");

  Eigen::JacobiSVD<CMatrix> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sigma = svd.singularValues();
  const double smax = sigma(0);
  for (int l = 0; l < layers; ++l) {
    if (!(sigma(l) > 1e-12 * smax)) {
      throw NumericalError("truncated_svd: rank below requested layer count");
    }
  }

  TruncatedSvd out;
  out.S = sigma.head(layers);
  out.U = svd.matrixU().leftCols(layers).adjoint();
  out.V = svd.matrixV().leftCols(layers).adjoint();
  out.discarded_energy = sigma.tail(sigma.size() - layers).squaredNorm();

  for (int l = 0; l < layers; ++l) {
    Eigen::Index j = 0;
    out.V.row(l).cwiseAbs().maxCoeff(&j);
    const cdouble pivot = out.V(l, j);
    const cdouble phase = std::conj(pivot / std::abs(pivot));
    out.V.row(l) *= phase;
    out.U.row(l) *= phase;
    out.V(l, j) = cdouble(out.V(l, j).real(), 0.0);
  }
  return out;
}

MainDecomposition main_decomposition(std::span<const TruncatedSvd> svds) {
  if (svds.empty()) throw std::invalid_argument("main_decomposition: no users");
  MainDecomposition md;
  md.dims.T = static_cast<int>(svds.front().V.cols());
  for (const TruncatedSvd& s : svds) {
    if (s.V.cols() != md.dims.T) throw std::invalid_argument("main_decomposition: inconsistent T");
    md.dims.rx.push_back(static_cast<int>(s.U.cols()));
    md.dims.layers.push_back(s.layers());
  }
  const int L = md.dims.total_layers();
  const int R = md.dims.total_rx();
  md.U = CMatrix::Zero(L, R);
  md.S.resize(L);
  md.V.resize(L, md.dims.T);
  int lo = 0;
  int ro = 0;
  for (const TruncatedSvd& s : svds) {
    const int lk = s.layers();
    md.U.block(lo, ro, lk, s.U.cols()) = s.U;
    md.S.segment(lo, lk) = s.S;
    md.V.middleRows(lo, lk) = s.V;
    lo += lk;
    ro += static_cast<int>(s.U.cols());
  }
  md.C = md.V * md.V.adjoint() - CMatrix::Identity(L, L);
  return md;
}

ChannelSet ChannelSet::build(const SystemDims& dims, std::vector<UserChannel> users) {
  dims.validate();
  if (static_cast<int>(users.size()) != dims.users()) {
    throw std::invalid_argument("ChannelSet: user count does not match dims");
  }
  ChannelSet cs;
  cs.dims = dims;
  cs.svds.reserve(users.size());
  for (int k = 0; k < dims.users(); ++k) {
    const CMatrix& H = users[k].H;
    if (H.rows() != dims.rx[k] || H.cols() != dims.T) {
      throw std::invalid_argument("ChannelSet: channel " + std::to_string(k) + " has wrong shape");
    }
    cs.svds.push_back(truncated_svd(users[k], dims.layers[k]));
  }
  cs.users = std::move(users);
  cs.decomposition = main_decomposition(cs.svds);
  return cs;
}

}  // namespace mupa
