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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mupa/harness.hpp"
#include "mupa/metrics.hpp"
#include "mupa/oracle.hpp"
#include "mupa/power_allocation.hpp"

using namespace mupa;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(int id, const std::string& detail) {
  std::printf("INFO criterion %d: %s\n", id, detail.c_str());
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double max_offdiag(const CMatrix& M) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(M(i, j)));
    }
  }
  return worst;
}

// Random dimensions with L <= 8 and R <= T <= 16.
SystemDims random_dims(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> users(1, 4);
  SystemDims d;
  const int K = users(rng);
  for (int k = 0; k < K; ++k) {
    const int r = std::uniform_int_distribution<int>(1, 4)(rng);
    const int l = std::uniform_int_distribution<int>(1, std::min(r, 2))(rng);
    d.rx.push_back(r);
    d.layers.push_back(l);
  }
  d.T = std::uniform_int_distribution<int>(std::max(d.total_rx(), 2), 16)(rng);
  return d;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0;
  double my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

// ---- 1 ----------------------------------------------------------------

void zf_exactness() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const SystemDims d = random_dims(rng);
    const ChannelSet cs = ChannelSet::build(d, generate_rayleigh(d, rng()));
    const Precoder pre = build_precoder(PrecoderKind::zf(), cs.decomposition);
    worst = std::max(worst, max_offdiag(cs.decomposition.V * pre.Wp));
  }
  const double dt = seconds_since(t0);
  report(1, "ZF exactness", worst < 1e-10 && dt < 5.0,
         fmt("max |offdiag(V W'_ZF)| = %.2e over 100 instances, %.2f s", worst, dt));
}

// ---- 2 ----------------------------------------------------------------

// Channels whose inter-user correlation norm is close to `target`.
ChannelSet calibrated_channels(const SystemDims& d, double target, std::uint64_t seed) {
  const double probe = 1e-3;
  const double n0 = interference_correlation_norm(d, generate_low_correlation(d, probe, seed));
  return ChannelSet::build(d, generate_low_correlation(d, probe * target / n0, seed));
}

void asymptotic_diagonalisation() {
  const auto t0 = Clock::now();
  const SystemDims d = SystemDims::uniform(16, 4, 2, 2);
  const std::vector<double> lambdas{1e-2, 1e-3, 1e-4};
  const int seeds = 50;
  int rzf_ok = 0;
  int arzf_ok = 0;
  int arzf_literal_ok = 0;
  double corr_ratio_worst = 1.0;
  double arzf_literal_mean = 0.0;
  for (int s = 0; s < seeds; ++s) {
    std::vector<double> e_rzf;
    std::vector<double> e_arzf;
    std::vector<double> e_arzf_literal;
    for (double lam : lambdas) {
      const ChannelSet cs = calibrated_channels(d, lam, 2000 + s);
      const MainDecomposition& md = cs.decomposition;
      const double cn = interference_correlation_norm(d, cs.users);
      corr_ratio_worst = std::max({corr_ratio_worst, cn / lam, lam / cn});
      const int L = d.total_layers();
      const CMatrix I = CMatrix::Identity(L, L);

      const Precoder rzf = build_precoder(PrecoderKind::rzf(lam), md);
      e_rzf.push_back((md.V * rzf.Wp - (1.0 - lam) * I).norm());

      // ARZF regularises with lambda S^-2, so its first-order diagonal is I - lambda S^-2.
      const Precoder arzf = build_precoder(PrecoderKind::arzf(lam), md);
      const CMatrix VW = md.V * arzf.Wp;
      const RVector n = md.S.cwiseAbs2().cwiseInverse();
      CMatrix target = I;
      target.diagonal() -= (lam * n).cast<cdouble>();
      e_arzf.push_back((VW - target).norm());
      e_arzf_literal.push_back((VW - (1.0 - lam) * I).norm());
    }
    rzf_ok += loglog_slope(lambdas, e_rzf) >= 1.8 ? 1 : 0;
    arzf_ok += loglog_slope(lambdas, e_arzf) >= 1.8 ? 1 : 0;
    const double lit = loglog_slope(lambdas, e_arzf_literal);
    arzf_literal_ok += lit >= 1.8 ? 1 : 0;
    arzf_literal_mean += lit / seeds;
  }
  const double dt = seconds_since(t0);
  const bool ok = rzf_ok >= 0.9 * seeds && arzf_ok >= 0.9 * seeds && dt < 10.0;
  report(2, "asymptotic diagonalisation", ok,
         fmt("slope >= 1.8 on RZF %d/%d, ARZF %d/%d seeds (||C||/lambda within x%.2f), %.2f s", rzf_ok, seeds,
             arzf_ok, seeds, corr_ratio_worst, dt));
  info(2, fmt("ARZF against (1 - lambda) I instead of I - lambda S^-2: slope >= 1.8 on %d/%d seeds, mean slope %.2f",
              arzf_literal_ok, seeds, arzf_literal_mean));
}

// ---- 3 ----------------------------------------------------------------

void cd_characterisation() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> power(0.1, 2.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const SystemDims d = random_dims(rng);
    const ChannelSet cs = ChannelSet::build(d, generate_rayleigh(d, rng()));
    const Precoder pre = build_precoder(PrecoderKind::zf(), cs.decomposition);
    RVector p(d.total_layers());
    for (Eigen::Index l = 0; l < p.size(); ++l) p(l) = power(rng);
    const PowerAllocation pa = PowerAllocation::from_p(pre, p);
    const CMatrix G = detect(DetectorType::Conjugate, cs, pre, pa, 0.0).assemble();
    CMatrix H(d.total_rx(), d.T);
    for (int k = 0; k < d.users(); ++k) H.middleRows(d.rx_offset(k), d.rx[k]) = cs.users[k].H;
    const CMatrix expect = p.cwiseSqrt().cwiseInverse().cast<cdouble>().asDiagonal() * cs.decomposition.V;
    worst = std::max(worst, (G * H - expect).norm());
  }
  report(3, "conjugate detection", worst < 1e-10, fmt("max ||G^C H - P^-1 V||_F = %.2e over 100 instances", worst));
}

// ---- 4 ----------------------------------------------------------------

void cd_irc_corner() {
  const SystemDims d = SystemDims::uniform(16, 4, 2, 2);
  double worst = 0.0;
  int trend_ok = 0;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    const ChannelSet cs = ChannelSet::build(d, generate_rayleigh(d, 4000 + s));
    const Precoder zf = build_precoder(PrecoderKind::zf(), cs.decomposition);
    const PowerAllocation eq = equal_pa_tpc(zf, 1.0);
    const CMatrix gc = detect(DetectorType::Conjugate, cs, zf, eq, 0.0).assemble();
    const CMatrix gi = detect(DetectorType::MmseIrc, cs, zf, eq, 0.0).assemble();
    worst = std::max(worst, (gi - gc).norm());

    // RZF precoding and IRC both regularised by lambda = sigma2 / P.
    std::vector<double> rel;
    for (double lam : {1e-1, 1e-2, 1e-3}) {
      const Precoder rzf = build_precoder(PrecoderKind::rzf(lam), cs.decomposition);
      const PowerAllocation pa = equal_pa_tpc(rzf, 1.0);
      const CMatrix c = detect(DetectorType::Conjugate, cs, rzf, pa, 0.0).assemble();
      const CMatrix i = detect(DetectorType::MmseIrc, cs, rzf, pa, lam).assemble();
      rel.push_back((i - c).norm() / c.norm());
    }
    trend_ok += (rel[1] < rel[0] && rel[2] < rel[1]) ? 1 : 0;
  }
  report(4, "CD = IRC corner", worst < 1e-8 && trend_ok >= 0.95 * seeds,
         fmt("ZF, sigma2 = 0: max ||G^IRC - G^C||_F = %.2e; decreasing trend on %d/%d seeds", worst, trend_ok, seeds));
}

// ---- 5 ----------------------------------------------------------------

void equal_pa_optimality() {
  const SystemDims d = SystemDims::uniform(8, 3, 1, 1);
  const double P = 1.0;
  const int steps = 200;
  const oracle::GridSpec spec = oracle::GridSpec::uniform(2, 0.0, P, steps);
  int ok = 0;
  for (int s = 0; s < 20; ++s) {
    const ChannelSet cs = ChannelSet::build(d, generate_rayleigh(d, 5000 + s));
    const Precoder pre = build_precoder(PrecoderKind::zf(), cs.decomposition);
    const RVector s2 = cs.decomposition.S.cwiseAbs2();
    const RVector w2 = pre.col_norms.cwiseAbs2();
    // Product of interference-free SINRs p_l s_l^2 with p_l = rho_l / ||w'_l||^2.
    const auto product = [&](const oracle::Vec& r) {
      const double r3 = P - r(0) - r(1);
      return (r(0) * s2(0) / w2(0)) * (r(1) * s2(1) / w2(1)) * (r3 * s2(2) / w2(2));
    };
    const auto simplex = [&](const oracle::Vec& r) { return r(0) + r(1) <= P * (1.0 + 1e-12); };
    const oracle::GridResult g = oracle::grid_maximize(product, simplex, spec);
    const RVector rho = equal_pa_tpc(pre, P).rho();
    const double r3 = P - g.argmax(0) - g.argmax(1);
    const bool hit = std::abs(g.argmax(0) - rho(0)) <= spec.cell(0) + 1e-12 &&
                     std::abs(g.argmax(1) - rho(1)) <= spec.cell(1) + 1e-12 &&
                     std::abs(r3 - rho(2)) <= spec.cell(0) + 1e-12;
    ok += hit ? 1 : 0;
  }
  report(5, "equal PA under TPC", ok == 20, fmt("grid optimum within one step of rho = P/3 on %d/20 precoders", ok));
}

// ---- 6 ----------------------------------------------------------------

void kkt_vs_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(606);
  std::normal_distribution<double> normal(0.0, 1.0);
  int ok = 0;
  int certified = 0;
  double worst_stat = 0.0;
  double worst_comp = 0.0;
  const int instances = 50;
  for (int n = 0; n < instances; ++n) {
    const int T = n % 2 == 0 ? 3 : 4;
    CMatrix W(T, 2);
    for (int i = 0; i < T; ++i) {
      for (int j = 0; j < 2; ++j) W(i, j) = cdouble(normal(rng), normal(rng));
    }
    const Precoder pre = make_precoder(W);
    const double P = 1.0;
    const double b = P / T;
    const KktSolution s = papc_kkt_solve(pre, P);
    worst_stat = std::max(worst_stat, s.residuals.stationarity);
    worst_comp = std::max(worst_comp, s.residuals.complementarity);
    certified += (s.residuals.stationarity < 1e-8 && s.residuals.complementarity < 1e-8) ? 1 : 0;

    const RMatrix& A = pre.row_sq;
    const double hi0 = b / A.col(0).maxCoeff();
    const double hi1 = b / A.col(1).maxCoeff();
    const oracle::GridSpec spec{{0.0, 0.0}, {hi0 * T, hi1 * T}, {400, 400}};
    const oracle::GridResult g = oracle::grid_maximize(
        oracle::log_objective, [&](const oracle::Vec& p) { return oracle::polytope_feasible(A, b, p); }, spec);
    // One grid cell of slack, measured along the gradient 1/p of the objective.
    const double slack = spec.cell(0) / s.p(0) + spec.cell(1) / s.p(1);
    ok += (s.objective >= g.value - 1e-12 && s.objective - g.value <= slack) ? 1 : 0;
  }
  const double dt = seconds_since(t0);
  report(6, "PAPC KKT vs oracle", ok == instances && certified == instances && dt < 60.0,
         fmt("objective within one cell on %d/%d; residuals stationarity %.1e, complementarity %.1e; %.2f s", ok,
             instances, worst_stat, worst_comp, dt));
}

// ---- 7 ----------------------------------------------------------------

void eesm_closed_form_check() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> unit(0.5, 2.0);
  std::uniform_int_distribution<int> mcs(0, 16);
  const McsTable& table = McsTable::builtin(1);
  const double sigma2 = 1.0;
  const double P = 10.0;
  int grad_ok = 0;
  int grid_ok = 0;
  int stationary_ok = 0;
  double worst_grad = 0.0;
  double worst_grid = 0.0;
  int done = 0;
  while (done < 50) {
    const int L = done % 2 == 0 ? 2 : 3;
    const SystemDims d = SystemDims::uniform(L, 1, L, L);
    const RVector beta = RVector::Constant(1, table.beta[mcs(rng)]);
    RVector g(L);
    RVector w(L);
    for (int l = 0; l < L; ++l) {
      g(l) = unit(rng);
      w(l) = unit(rng);
    }
    const EesmPaResult r = eesm_closed_form(d, beta, g, w, P, sigma2);
    if (!r.feasible) continue;
    ++done;
    const std::vector<int> layers{L};
    const auto lagrangian = [&](const oracle::Vec& p) {
      return oracle::eesm_lagrangian(layers, beta, g, w, r.multiplier, P, sigma2, p);
    };
    const double scale = r.multiplier * w.norm();

    // Analytic gradient vs central differences, at the closed form and at a perturbed point.
    const double h = 1e-6 * r.p.maxCoeff();
    const RVector fd = oracle::finite_diff_gradient(lagrangian, r.p, h);
    const RVector an = eesm_lagrangian_gradient(d, beta, g, w, r.multiplier, sigma2, r.p);
    RVector q = r.p;
    for (int l = 0; l < L; ++l) q(l) *= unit(rng);
    const RVector fdq = oracle::finite_diff_gradient(lagrangian, q, 1e-6 * q.maxCoeff());
    const RVector anq = eesm_lagrangian_gradient(d, beta, g, w, r.multiplier, sigma2, q);
    const double err = std::max((an - fd).norm() / scale, (anq - fdq).norm() / std::max(fdq.norm(), scale));
    worst_grad = std::max(worst_grad, err);
    grad_ok += err < 1e-5 ? 1 : 0;
    stationary_ok += an.norm() < 1e-8 * scale ? 1 : 0;

    // Brute-force maximiser of the fixed-beta SE on the budget hyperplane.
    const auto se = [&](const oracle::Vec& x) {
      oracle::Vec p(L);
      p.head(L - 1) = x;
      p(L - 1) = (P - w.head(L - 1).dot(x)) / w(L - 1);
      return -oracle::eesm_lagrangian(layers, beta, g, w, 0.0, P, sigma2, p);
    };
    const auto on_budget = [&](const oracle::Vec& x) { return w.head(L - 1).dot(x) <= P; };
    oracle::GridSpec spec;
    for (int l = 0; l < L - 1; ++l) {
      spec.lower.push_back(0.0);
      spec.upper.push_back(P / w(l));
      spec.steps.push_back(L == 2 ? 20000 : 1000);
    }
    const oracle::GridResult best = oracle::grid_maximize(se, on_budget, spec);
    oracle::Vec pg(L);
    pg.head(L - 1) = best.argmax;
    pg(L - 1) = (P - w.head(L - 1).dot(best.argmax)) / w(L - 1);
    const double rel = (pg - r.p).norm() / r.p.norm();
    worst_grid = std::max(worst_grid, rel);
    grid_ok += rel < 0.01 ? 1 : 0;
  }
  report(7, "EESM closed form", grad_ok == 50 && grid_ok == 50,
         fmt("gradient vs finite differences %d/50 (worst rel %.1e), grid stationary point within 1%% %d/50 "
             "(worst %.2e), analytic stationarity %d/50",
             grad_ok, worst_grad, grid_ok, worst_grid, stationary_ok));
}

// ---- 8 ----------------------------------------------------------------

void eesm_fixed_point_check() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> db(-10.0, 30.0);
  std::uniform_int_distribution<int> len(1, 4);
  int converged = 0;
  int max_iters = 0;
  const int tuples = 10000;
  for (int n = 0; n < tuples; ++n) {
    std::vector<double> s(static_cast<std::size_t>(len(rng)));
    for (double& v : s) v = from_db(db(rng));
    const EesmFixedPoint f = eesm_fixed_point(s, McsTable::builtin(1 + n % 2), 50);
    converged += (f.converged && f.iterations <= 50) ? 1 : 0;
    max_iters = std::max(max_iters, f.iterations);
  }
  double flat_err = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double v = from_db(db(rng));
    const EesmFixedPoint f = eesm_fixed_point(std::vector<double>(3, v), McsTable::builtin(1 + n % 2));
    flat_err = std::max(flat_err, std::abs(f.eff_sinr - v) / std::max(1.0, v));
  }
  const bool spots = McsTable::builtin(1).beta[10] == 3.97 && McsTable::builtin(2).beta[20] == 56.48 &&
                     McsTable::builtin(2).se[27] == 7.4063;
  McsTablePair file;
  bool file_ok = false;
  try {
    file = load_mcs_tables(std::string(MUPA_DATA_DIR) + "/mcs_tables.csv");
    const McsTablePair b = builtin_mcs_tables();
    file_ok = file.table1.beta == b.table1.beta && file.table1.se == b.table1.se &&
              file.table2.beta == b.table2.beta && file.table2.se == b.table2.se;
  } catch (const std::exception&) {
    file_ok = false;
  }
  report(8, "EESM fixed point", converged == tuples && flat_err < 1e-12 && spots && file_ok,
         fmt("stable MCS on %d/%d tuples (max %d iterations); equal-SINR error %.1e; table spot values %s; "
             "shipped CSV %s",
             converged, tuples, max_iters, flat_err, spots ? "exact" : "WRONG", file_ok ? "identical" : "DIFFERS"));
}

// ---- 9 ----------------------------------------------------------------

double system_se(const ChannelSet& cs, const Precoder& pre, const RVector& p, DetectorType det_type, double det_reg,
                 const EffSinrModel& model, double sigma2) {
  const PowerAllocation pa = PowerAllocation::from_p(pre, p);
  const DetectionSet det = detect(det_type, cs, pre, pa, det_reg);
  const RVector s = layer_sinrs(apply_power(pre, pa), cs, det, sigma2);
  const RVector eff = user_eff_sinrs(model, s, cs.dims);
  return spectral_efficiency(std::span<const double>(eff.data(), static_cast<std::size_t>(eff.size())),
                             cs.dims.layers);
}

void intersection_methods() {
  const auto t0 = Clock::now();
  const SystemDims d = SystemDims::uniform(64, 4, 4, 2);
  const McsTable& table = McsTable::builtin(1);
  const EffSinrModel eesm_model = EesmTableDriven{table};
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> ratio(0.1, 1.0);
  const int seeds = 500;
  int feasible = 0;
  int geo_wins = 0;
  double eesm_gain_sum = 0.0;
  const double P = 1.0;
  for (int s = 0; s < seeds; ++s) {
    const ChannelSet cs = ChannelSet::build(d, generate_low_correlation(d, 0.3, 9000 + s));
    const Precoder pre = build_precoder(PrecoderKind::zf(), cs.decomposition);
    const double sigma2 = ratio(rng) * P;
    const RVector p1 = papc_start_point(pre, P);

    const IntersectionResult geo = intersection_method_geo(pre, P);
    const IntersectionResult ees = intersection_method_eesm(cs, pre, DetectorType::MmseIrc, sigma2, table, sigma2, P);
    const bool ok_geo = check_constraints(apply_power(pre, PowerAllocation::from_p(pre, geo.p)), P,
                                          ConstraintMode::PAPC, 1e-9).satisfied;
    const bool ok_eesm = check_constraints(apply_power(pre, PowerAllocation::from_p(pre, ees.p)), P,
                                           ConstraintMode::PAPC, 1e-9).satisfied;
    feasible += (ok_geo && ok_eesm) ? 1 : 0;

    const double base_geo = system_se(cs, pre, p1, DetectorType::Conjugate, 0.0, GeometricMean{}, sigma2);
    const double se_geo = system_se(cs, pre, geo.p, DetectorType::Conjugate, 0.0, GeometricMean{}, sigma2);
    geo_wins += se_geo >= base_geo ? 1 : 0;

    const double base_eesm = system_se(cs, pre, p1, DetectorType::MmseIrc, sigma2, eesm_model, sigma2);
    const double se_eesm = system_se(cs, pre, ees.p, DetectorType::MmseIrc, sigma2, eesm_model, sigma2);
    eesm_gain_sum += se_eesm / base_eesm - 1.0;
  }
  const double dt = seconds_since(t0);
  const double mean_gain = eesm_gain_sum / seeds;
  report(9, "intersection methods", feasible == seeds && geo_wins >= 0.9 * seeds && mean_gain > 0.0 && dt < 120.0,
         fmt("PAPC-feasible %d/%d; im_geo >= equal PA on %d/%d; im_eesm mean gain %+.3f%%; %.1f s", feasible, seeds,
             geo_wins, seeds, 100.0 * mean_gain, dt));
}

// ---- 10 ---------------------------------------------------------------

void harness_determinism() {
  Scenario sc;
  sc.dims = SystemDims::uniform(16, 4, 2, 2);
  sc.snr_db = {0.0, 5.0, 10.0};
  sc.seeds = 12;
  sc.master_seed = 2024;
  sc.pa_algos = {PaAlgo::Native, PaAlgo::ImGeo, PaAlgo::ImEesm, PaAlgo::EesmTpc};
  sc.detector = DetectorType::MmseIrc;
  sc.eff_model = EffModelKind::EesmTable;
  const auto render = [&](int threads, OutputFormat f) {
    RunOptions opts;
    opts.threads = threads;
    std::ostringstream os;
    emit_results(run_scenario(sc, opts).records, f, os);
    return os.str();
  };
  const std::string serial = render(1, OutputFormat::Csv);
  const bool csv_same = serial == render(4, OutputFormat::Csv) && serial == render(1, OutputFormat::Csv);
  const bool json_same = render(1, OutputFormat::Json) == render(3, OutputFormat::Json);
  report(10, "harness determinism", csv_same && json_same,
         fmt("CSV %s across 1/4 threads and repeated runs (%zu bytes); JSON %s", csv_same ? "identical" : "DIFFERS",
             serial.size(), json_same ? "identical" : "DIFFERS"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{zf_exactness,          asymptotic_diagonalisation,
                                                    cd_characterisation,   cd_irc_corner,
                                                    equal_pa_optimality,   kkt_vs_oracle,
                                                    eesm_closed_form_check, eesm_fixed_point_check,
                                                    intersection_methods,  harness_determinism};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::printf("%s: %d of %zu criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
