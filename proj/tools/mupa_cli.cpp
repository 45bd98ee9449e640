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

// mupa: run power-allocation experiments from a scenario file.
//
//   mupa run --scenario sc.txt --out results.csv [--format csv|json]
//            [--threads N] [--mcs-table 1|2] [--mcs-file tables.csv]
//            [--channels channels.mpach]
//   mupa gen-channels --T 16 --K 4 --R 2 --corr 0.3 --seed 7 --out ch.mpach
//
// Exit status: 0 success, 1 configuration error, 2 some seeds failed.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mupa/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSeedErrors = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-user MIMO power allocation experiments"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string format = "csv";
  int threads = 1;
  int mcs_table = 0;
  std::string mcs_file;
  std::string channels_path;

  CLI::App* run = app.add_subcommand("run", "Run a scenario and write the results table");
  run->add_option("--scenario", scenario_path, "Scenario file (key = value lines)")->required();
  run->add_option("--out", out_path, "Output path")->required();
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--mcs-table", mcs_table, "MCS table (overrides the scenario)")->check(CLI::IsMember({1, 2}));
  run->add_option("--mcs-file", mcs_file, "CSV with columns mcs,beta1,beta2,se1,se2");
  run->add_option("--channels", channels_path, "MPACH1 channel file replacing generation");

  int T = 16;
  int K = 4;
  int R = 2;
  double corr = 0.0;
  std::uint64_t seed = 1;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen-channels", "Write a random channel draw as an MPACH1 file");
  gen->add_option("--T", T, "Transmit antennas")->check(CLI::PositiveNumber);
  gen->add_option("--K", K, "Users")->check(CLI::PositiveNumber);
  gen->add_option("--R", R, "Receive antennas per user")->check(CLI::PositiveNumber);
  gen->add_option("--corr", corr, "Kronecker correlation coefficient in [0, 1)");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", gen_out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*gen) {
    try {
      const mupa::SystemDims dims = mupa::SystemDims::uniform(T, K, R, 1);
      mupa::save_channels(gen_out, mupa::generate_correlated(dims, corr, seed));
    } catch (const std::exception& e) {
      std::cerr << "mupa: " << e.what() << '\n';
      return kExitConfig;
    }
    return 0;
  }

  mupa::ScenarioResult result;
  try {
    mupa::Scenario sc = mupa::load_scenario(scenario_path);
    if (mcs_table != 0) sc.mcs_table_id = mcs_table;
    mupa::RunOptions opts;
    opts.threads = threads;
    if (!mcs_file.empty()) opts.mcs_tables = mupa::load_mcs_tables(mcs_file);
    if (!channels_path.empty()) {
      mupa::LoadedChannels loaded = mupa::load_channels(channels_path);
      if (loaded.dims.T != sc.dims.T || loaded.dims.rx != sc.dims.rx) {
        throw mupa::FormatError("channel file dimensions do not match the scenario");
      }
      opts.channels = std::move(loaded.users);
    }
    result = mupa::run_scenario(sc, opts);
    if (result.records.empty()) throw std::runtime_error("no seed produced results");
    mupa::emit_results(result.records, mupa::parse_output_format(format), out_path);
  } catch (const std::exception& e) {
    std::cerr << "mupa: " << e.what() << '\n';
    return result.errors.empty() ? kExitConfig : kExitSeedErrors;
  }

  for (const mupa::SeedError& err : result.errors) {
    std::cerr << "mupa: seed " << err.seed << " snr " << err.snr_db << " dB: " << err.message << '\n';
  }
  return result.errors.empty() ? 0 : kExitSeedErrors;
}
