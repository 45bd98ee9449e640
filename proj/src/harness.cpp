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

#include "mupa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <span>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "mupa/metrics.hpp"
#include "mupa/power_allocation.hpp"

namespace mupa {

namespace {

struct SeedOutput {
  std::vector<RunRecord> records;
  std::vector<SeedError> errors;
};

EffSinrModel make_model(const Scenario& sc, const McsTable& table) {
  switch (sc.eff_model) {
    case EffModelKind::Geometric: return GeometricMean{};
    case EffModelKind::EesmFixed: return EesmFixedBeta{sc.eesm_beta};
    case EffModelKind::EesmTable: return EesmTableDriven{table};
  }
  return GeometricMean{};
}

PowerAllocation allocate(PaAlgo algo, const Scenario& sc, const ChannelSet& cs, const Precoder& pre,
                         const McsTable& table, double sigma2, double det_reg) {
  const double P = sc.P_total;
  switch (algo) {
    case PaAlgo::Native: return native_pa(pre, {sc.constraint, P, pre.antennas()});
    case PaAlgo::EqualTpc: return equal_pa_tpc(pre, P);
    case PaAlgo::EqualPapcStart: return PowerAllocation::from_p(pre, papc_start_point(pre, P));
    case PaAlgo::ImGeo: return PowerAllocation::from_p(pre, intersection_method_geo(pre, P).p);
    case PaAlgo::ImEesm:
      return PowerAllocation::from_p(pre, intersection_method_eesm(cs, pre, sc.detector, det_reg, table, sigma2, P).p);
    case PaAlgo::EesmTpc: return eesm_tpc(cs, pre, sc.detector, det_reg, table, sigma2, P);
    case PaAlgo::KktPapc: return PowerAllocation::from_p(pre, papc_kkt_solve(pre, P).p);
  }
  throw std::invalid_argument("allocate: unknown algorithm");
}

std::vector<UserChannel> draw_channels(const Scenario& sc, std::uint64_t seed) {
  if (sc.channel == ChannelModel::LowCorrelation) return generate_low_correlation(sc.dims, sc.corr, seed);
  return generate_correlated(sc.dims, sc.corr, seed);
}

SeedOutput run_seed(const Scenario& sc, std::uint64_t index, const std::vector<UserChannel>& users,
                    const McsTable& table) {
  SeedOutput out;
  const ChannelSet cs = ChannelSet::build(sc.dims, users);
  const EffSinrModel model = make_model(sc, table);

  std::vector<PaAlgo> algos{sc.baseline};
  for (PaAlgo a : sc.pa_algos) {
    if (std::find(algos.begin(), algos.end(), a) == algos.end()) algos.push_back(a);
  }

  for (double snr : sc.snr_db) {
    try {
      const double sigma2 = sc.P_total / from_db(snr);
      const double pre_reg = sc.precoder_reg.value_or(sigma2 / sc.P_total);
      const double det_reg = sc.detector_reg.value_or(sigma2);
      const Precoder pre = build_precoder({sc.precoder, pre_reg}, cs.decomposition);

      std::vector<RunRecord> rows;
      for (PaAlgo algo : algos) {
        const auto t0 = std::chrono::steady_clock::now();
        const PowerAllocation pa = allocate(algo, sc, cs, pre, table, sigma2, det_reg);
        const auto t1 = std::chrono::steady_clock::now();

        const DetectionSet det = detect(sc.detector, cs, pre, pa, det_reg);
        const RVector sinrs = layer_sinrs(apply_power(pre, pa), cs, det, sigma2);
        const RVector eff = user_eff_sinrs(model, sinrs, sc.dims);

        RunRecord r;
        r.seed = index;
        r.snr_db = snr;
        r.algo = to_string(algo);
        r.se = spectral_efficiency(std::span<const double>(eff.data(), static_cast<std::size_t>(eff.size())),
                                   sc.dims.layers);
        for (Eigen::Index l = 0; l < sinrs.size(); ++l) r.sinr_db.push_back(to_db(sinrs(l)));
        double su = 0.0;
        for (int k = 0; k < sc.dims.users(); ++k) {
          const std::span<const double> pk(pa.p().data() + sc.dims.layer_offset(k),
                                           static_cast<std::size_t>(sc.dims.layers[k]));
          su += to_db(single_user_sinr(cs.svds[k].S, pk, sigma2));
        }
        r.su_sinr_db = su / sc.dims.users();
        if (sc.record_runtime) {
          r.runtime_us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
        }
        rows.push_back(std::move(r));
      }
      const double base = rows.front().se;
      for (std::size_t i = 1; i < rows.size(); ++i) rows[i].gain = base > 0.0 ? rows[i].se / base - 1.0 : 0.0;
      for (RunRecord& r : rows) out.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.errors.push_back({index, snr, e.what()});
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finaliser over a Weyl sequence position.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ScenarioResult run_scenario(const Scenario& sc, const RunOptions& options) {
  sc.validate();
  const McsTablePair tables = options.mcs_tables.value_or(builtin_mcs_tables());
  const McsTable& table = tables.get(sc.mcs_table_id);

  const int seeds = options.channels ? 1 : sc.seeds;
  if (options.channels && static_cast<int>(options.channels->size()) != sc.dims.users()) {
    throw std::invalid_argument("run_scenario: channel file user count does not match the scenario");
  }
  std::vector<SeedOutput> slots(static_cast<std::size_t>(seeds));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < seeds; i = next++) {
      auto& slot = slots[static_cast<std::size_t>(i)];
      const auto index = static_cast<std::uint64_t>(i);
      try {
        const std::vector<UserChannel> users =
            options.channels ? *options.channels : draw_channels(sc, derive_seed(sc.master_seed, index));
        slot = run_seed(sc, index, users, table);
      } catch (const std::exception& e) {
        slot.errors.push_back({index, 0.0, e.what()});
      }
    }
  };
  const int threads = std::clamp(options.threads, 1, seeds);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  ScenarioResult result;
  for (SeedOutput& s : slots) {
    std::move(s.records.begin(), s.records.end(), std::back_inserter(result.records));
    std::move(s.errors.begin(), s.errors.end(), std::back_inserter(result.errors));
  }
  std::stable_sort(result.records.begin(), result.records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.seed, a.snr_db, a.algo) < std::tie(b.seed, b.snr_db, b.algo);
  });
  return result;
}

void emit_results(const std::vector<RunRecord>& records, OutputFormat format, std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("emit_results: no records");
  if (format == OutputFormat::Csv) {
    out << "seed,snr_db,algo,se,gain,runtime_us\n";
    for (const RunRecord& r : records) {
      out << r.seed << ',' << format_double(r.snr_db) << ',' << r.algo << ',' << format_double(r.se) << ','
          << format_double(r.gain) << ',' << r.runtime_us << '\n';
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const RunRecord& r : records) {
      nlohmann::ordered_json o;
      o["seed"] = r.seed;
      o["snr_db"] = r.snr_db;
      o["algo"] = r.algo;
      o["se"] = r.se;
      o["gain"] = r.gain;
      o["runtime_us"] = r.runtime_us;
      arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
  }
  if (!out) throw std::runtime_error("emit_results: write failed");
}

void emit_results(const std::vector<RunRecord>& records, OutputFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_results: cannot open " + path);
  emit_results(records, format, out);
}

}  // namespace mupa
