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


#include <doctest.h>

#include "mupa/metrics.hpp"
#include "mupa/oracle.hpp"
#include "mupa/power_allocation.hpp"
#include "test_util.hpp"

using namespace mupa;

TEST_CASE("equal PA under the total power constraint") {
  const Precoder unit = make_precoder(CMatrix::Identity(8, 8));
  const PowerAllocation a = equal_pa_tpc(unit, 8.0);
  CHECK((a.p().array() - 1.0).abs().maxCoeff() < 1e-15);

  CMatrix W = CMatrix::Zero(2, 2);
  W(0, 0) = 1.0;
  W(1, 1) = 2.0;
  const PowerAllocation b = equal_pa_tpc(make_precoder(W), 4.0);
  CHECK(b.rho()(0) == doctest::Approx(2.0));
  CHECK(b.rho()(1) == doctest::Approx(2.0));
  CHECK(b.p()(0) == doctest::Approx(2.0));
  CHECK(b.p()(1) == doctest::Approx(0.5));
  CHECK(b.total_power() == doctest::Approx(4.0));

  CHECK_THROWS_AS(equal_pa_tpc(make_precoder(CMatrix::Zero(2, 2)), 1.0), std::invalid_argument);
}

TEST_CASE("equal rho maximises the product of rho on the simplex") {
  const double P = 3.0;
  const int steps = 200;
  oracle::GridSpec spec = oracle::GridSpec::uniform(2, 0.0, P, steps);
  const auto product = [&](const oracle::Vec& r) { return r(0) * r(1) * (P - r(0) - r(1)); };
  const auto on_simplex = [&](const oracle::Vec& r) { return r(0) + r(1) <= P + 1e-12; };
  const oracle::GridResult g = oracle::grid_maximize(product, on_simplex, spec);
  const Precoder pre = test::random_precoder(6, 3, 1);
  const RVector rho = equal_pa_tpc(pre, P).rho();
  CHECK(std::abs(g.argmax(0) - rho(0)) <= spec.cell(0));
  CHECK(std::abs(g.argmax(1) - rho(1)) <= spec.cell(1));
}

TEST_CASE("native PA is unit power rescaled onto the constraint") {
  const Precoder pre = test::random_precoder(5, 3, 2);
  const PowerAllocation tpc = native_pa(pre, {ConstraintMode::TPC, 2.0, 5});
  CHECK(tpc.total_power() == doctest::Approx(2.0));
  CHECK(tpc.p()(0) == doctest::Approx(tpc.p()(2)));
  const PowerAllocation papc = native_pa(pre, {ConstraintMode::PAPC, 2.0, 5});
  CHECK(antenna_powers(pre, papc.p()).maxCoeff() == doctest::Approx(0.4));
  CHECK_THROWS_AS(scale_to_constraint(pre, RVector::Zero(3), {ConstraintMode::TPC, 1.0, 5}), std::invalid_argument);
  CHECK_THROWS_AS((PowerConstraint{ConstraintMode::TPC, 0.0, 5}).validate(), std::invalid_argument);
}

TEST_CASE("normalised detector norms are 1/s^2 for ZF with conjugate detection") {
  const SystemDims d = SystemDims::uniform(12, 3, 2, 2);
  const ChannelSet cs = test::rayleigh_set(d, 3);
  const Precoder pre = test::zf_precoder(cs);
  const PowerAllocation pa = equal_pa_tpc(pre, 1.0);
  const RVector g = normalized_detector_norms(cs, pre, detect(DetectorType::Conjugate, cs, pre, pa, 0.0));
  const RVector expect = cs.decomposition.S.cwiseAbs2().cwiseInverse();
  CHECK((g - expect).cwiseAbs().maxCoeff() < 1e-10 * expect.maxCoeff());
}

TEST_CASE("EESM closed form: symmetric layers collapse to equal rho") {
  const SystemDims d = SystemDims::uniform(8, 2, 2, 2);
  RVector w(4);
  w << 1.0, 2.0, 0.5, 4.0;
  const RVector g = w.cwiseInverse();  // g_l ||w'_l||^2 = 1 for every layer
  const EesmPaResult r = eesm_closed_form(d, RVector::Constant(2, 1.6), g, w, 4.0, 0.1);
  REQUIRE(r.feasible);
  CHECK((r.ctx.f.array() - 1.0).abs().maxCoeff() < 1e-14);
  const RVector rho = r.p.cwiseProduct(w);
  CHECK((rho.array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("EESM closed form matches a brute-force stationary point") {
  // Single user, two layers, g_l ||w'_l||^2 = [1, 2], beta 1.6, sigma2 1, P 10.
  const SystemDims d = SystemDims::uniform(2, 1, 2, 2);
  const RVector beta = RVector::Constant(1, 1.6);
  RVector g(2);
  g << 1.0, 2.0;
  const RVector w = RVector::Ones(2);
  const EesmPaResult r = eesm_closed_form(d, beta, g, w, 10.0, 1.0);
  REQUIRE(r.feasible);
  CHECK(r.p.sum() == doctest::Approx(10.0));

  const auto se = [&](const oracle::Vec& x) {
    oracle::Vec p(2);
    p << x(0), 10.0 - x(0);
    return -oracle::eesm_lagrangian({2}, beta, g, w, 0.0, 10.0, 1.0, p);
  };
  oracle::GridSpec spec{{0.0}, {10.0}, {20000}};
  const oracle::GridResult best = oracle::grid_maximize(se, [](const oracle::Vec&) { return true; }, spec);
  CHECK(std::abs(best.argmax(0) - r.p(0)) <= 0.01 * r.p(0));

  // Stationarity of the Lagrangian at the closed form.
  CHECK(eesm_lagrangian_gradient(d, beta, g, w, r.multiplier, 1.0, r.p).norm() < 1e-10);
}

TEST_CASE("EESM Lagrangian gradient agrees with finite differences") {
  const SystemDims d{8, {2, 3}, {2, 3}};
  const RVector beta = (RVector(2) << 1.6, 4.27).finished();
  const RVector g = RVector::LinSpaced(5, 0.3, 1.2);
  const RVector w = RVector::LinSpaced(5, 1.5, 0.5);
  const RVector p = RVector::LinSpaced(5, 0.2, 0.9);
  const double mult = 0.7;
  const RVector analytic = eesm_lagrangian_gradient(d, beta, g, w, mult, 0.05, p);
  const auto lag = [&](const oracle::Vec& x) { return oracle::eesm_lagrangian({2, 3}, beta, g, w, mult, 1.0, 0.05, x); };
  const RVector fd = oracle::finite_diff_gradient(lag, p, 1e-6);
  CHECK((analytic - fd).norm() < 1e-5 * fd.norm());
}

TEST_CASE("EESM closed form flags nonpositive powers") {
  const SystemDims d = SystemDims::uniform(2, 1, 2, 2);
  RVector g(2);
  g << 1.0, 100.0;
  const EesmPaResult r = eesm_closed_form(d, RVector::Constant(1, 1.6), g, RVector::Ones(2), 0.01, 1.0);
  CHECK_FALSE(r.feasible);
  CHECK(r.ctx.x.size() == 0);
  CHECK(eesm_closed_form(d, RVector::Constant(1, 1.6), g, RVector::Zero(2), 1.0, 1.0).feasible == false);
  CHECK_THROWS_AS(eesm_closed_form(d, RVector::Constant(1, 1.6), RVector::Zero(2), RVector::Ones(2), 1.0, 1.0),
                  NumericalError);
}

TEST_CASE("EESM closed form beats equal PA on its own objective") {
  const SystemDims d = SystemDims::uniform(16, 4, 2, 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ChannelSet cs = test::rayleigh_set(d, seed);
    const Precoder pre = test::zf_precoder(cs);
    const double sigma2 = 0.3;
    const PowerAllocation eq = equal_pa_tpc(pre, 1.0);
    const EesmStart st = eesm_start(cs, pre, eq, DetectorType::Conjugate, 0.0, McsTable::builtin(1), sigma2);
    const EesmPaResult r = eesm_tpc_closed_form(d, pre, st.beta_k, st.g_norms, sigma2, 1.0);
    if (!r.feasible) continue;
    CHECK(r.p.dot(pre.col_norms.cwiseAbs2()) == doctest::Approx(1.0));
    CHECK(eesm_fixed_beta_se(d, st.beta_k, st.g_norms, sigma2, r.p) >=
          eesm_fixed_beta_se(d, st.beta_k, st.g_norms, sigma2, eq.p()) - 1e-12);
    // x and X are consistent with p.
    CHECK(r.ctx.x.maxCoeff() <= 1.0);
    CHECK(r.ctx.X(0) == doctest::Approx(r.ctx.x.head(2).mean()));
  }
}

TEST_CASE("frozen betas come from the self-consistent EESM iteration") {
  const SystemDims d = SystemDims::uniform(16, 4, 2, 2);
  const ChannelSet cs = test::rayleigh_set(d, 7);
  const Precoder pre = test::zf_precoder(cs);
  const PowerAllocation eq = equal_pa_tpc(pre, 1.0);
  const McsTable& t = McsTable::builtin(2);
  const double sigma2 = 0.05;
  const EesmStart st = eesm_start(cs, pre, eq, DetectorType::MmseIrc, sigma2, t, sigma2);
  const RVector s = layer_sinrs(apply_power(pre, eq), cs, detect(DetectorType::MmseIrc, cs, pre, eq, sigma2), sigma2);
  for (int k = 0; k < 4; ++k) {
    CHECK(st.beta_k(k) == eesm_fixed_point(std::vector<double>{s(2 * k), s(2 * k + 1)}, t).beta);
  }
}

TEST_CASE("full EESM allocation under TPC is feasible") {
  const SystemDims d = SystemDims::uniform(16, 4, 2, 2);
  const ChannelSet cs = test::rayleigh_set(d, 2);
  const Precoder pre = test::zf_precoder(cs);
  const PowerAllocation pa = eesm_tpc(cs, pre, DetectorType::Conjugate, 0.0, McsTable::builtin(1), 0.1, 1.0);
  CHECK(check_constraints(apply_power(pre, pa), 1.0, ConstraintMode::TPC, 1e-9).satisfied);
}
