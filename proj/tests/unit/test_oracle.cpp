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

TEST_CASE("oracle and library agree on the PAPC optimum") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RMatrix A = test::random_gain_matrix(4, 2, 500 + seed);
    const KktSolution s = papc_kkt_solve(A, 4.0);
    const double hi = 1.0 / A.minCoeff();
    const oracle::GridSpec spec{{0.0, 0.0}, {hi, hi}, {200, 200}};
    const oracle::GridResult g = oracle::grid_maximize(
        oracle::log_objective, [&](const oracle::Vec& p) { return oracle::polytope_feasible(A, 1.0, p); }, spec);
    CHECK(s.objective >= g.value - 1e-12);
    CHECK(s.objective <= g.value + spec.cell(0) / s.p(0) + spec.cell(1) / s.p(1));
    CHECK(oracle::log_objective(s.p) == doctest::Approx(s.objective).epsilon(1e-14));
  }
}

TEST_CASE("oracle SINR and EESM match the library on a random system") {
  const SystemDims d = SystemDims::uniform(10, 2, 3, 3);
  const ChannelSet cs = test::rayleigh_set(d, 12);
  const Precoder pre = build_precoder(PrecoderKind::arzf(0.2), cs.decomposition);
  const PowerAllocation pa = equal_pa_tpc(pre, 1.0);
  const CMatrix W = apply_power(pre, pa);
  const DetectionSet det = detect(DetectorType::MmseIrc, cs, pre, pa, 0.05);
  const RVector s = layer_sinrs(W, cs, det, 0.05);
  std::vector<double> user0;
  for (int i = 0; i < 3; ++i) {
    const double ref = oracle::layer_sinr(W, cs.users[0].H, det.G[0].row(i), i, 0.05);
    CHECK(s(i) == doctest::Approx(ref).epsilon(1e-12));
    user0.push_back(ref);
  }
  CHECK(eesm_eff_sinr(user0, 5.16) == doctest::Approx(oracle::eesm(user0, 5.16)).epsilon(1e-12));
  CHECK(geo_mean_eff_sinr(user0) == doctest::Approx(oracle::geometric_mean(user0)).epsilon(1e-12));
}
