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

#ifndef MUPA_HARNESS_HPP
#define MUPA_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mupa/channel.hpp"
#include "mupa/detection.hpp"
#include "mupa/mcs_table.hpp"
#include "mupa/precoding.hpp"

namespace mupa {

enum class PaAlgo { Native, EqualTpc, EqualPapcStart, ImGeo, ImEesm, EesmTpc, KktPapc };
enum class EffModelKind { Geometric, EesmFixed, EesmTable };
enum class OutputFormat { Csv, Json };
enum class ChannelModel { Correlated, LowCorrelation };

std::string to_string(PaAlgo algo);
PaAlgo parse_pa_algo(const std::string& name);
std::string to_string(EffModelKind kind);
EffModelKind parse_eff_model(const std::string& name);
OutputFormat parse_output_format(const std::string& name);
std::string to_string(ChannelModel model);
ChannelModel parse_channel_model(const std::string& name);

/// One Monte-Carlo experiment: a channel ensemble swept over SNR, scored
/// for several power allocations against a common baseline.
struct Scenario {
  SystemDims dims = SystemDims::uniform(64, 4, 4, 2);
  ChannelModel channel = ChannelModel::Correlated;
  /// Kronecker coefficient for Correlated, coupling for LowCorrelation.
  double corr = 0.0;
  std::vector<double> snr_db{10.0};  // P / sigma2
  int seeds = 1;
  std::uint64_t master_seed = 1;
  PrecoderType precoder = PrecoderType::ZF;
  std::optional<double> precoder_reg;  // defaults to sigma2 / P
  std::vector<PaAlgo> pa_algos{PaAlgo::ImGeo};
  PaAlgo baseline = PaAlgo::EqualPapcStart;
  DetectorType detector = DetectorType::Conjugate;
  std::optional<double> detector_reg;  // defaults to sigma2
  EffModelKind eff_model = EffModelKind::Geometric;
  double eesm_beta = 1.6;
  int mcs_table_id = 1;
  double P_total = 1.0;
  ConstraintMode constraint = ConstraintMode::PAPC;
  bool record_runtime = false;

  /// Throws std::invalid_argument on an inconsistent scenario.
  void validate() const;
};

/// Flat `key = value` text; lists are comma-separated, `#` starts a comment.
/// Throws FormatError on unknown keys or malformed values.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

struct RunRecord {
  std::uint64_t seed = 0;
  double snr_db = 0.0;
  std::string algo;
  double se = 0.0;
  double gain = 0.0;  // se / se_baseline - 1
  std::vector<double> sinr_db;
  double su_sinr_db = 0.0;  // per-user single-user SINR, averaged in dB
  std::int64_t runtime_us = 0;
};

struct SeedError {
  std::uint64_t seed = 0;
  double snr_db = 0.0;
  std::string message;
};

struct ScenarioResult {
  std::vector<RunRecord> records;
  std::vector<SeedError> errors;
};

struct RunOptions {
  int threads = 1;
  /// Overrides the built-in MCS tables.
  std::optional<McsTablePair> mcs_tables;
  /// Replaces channel generation; a single seed is then run.
  std::optional<std::vector<UserChannel>> channels;
};

/// Independent RNG seed for ensemble member `index`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Records sorted by (seed, snr_db, algo); identical for any thread count.
ScenarioResult run_scenario(const Scenario& sc, const RunOptions& options = {});

/// Columns seed, snr_db, algo, se, gain, runtime_us.
void emit_results(const std::vector<RunRecord>& records, OutputFormat format, std::ostream& out);
void emit_results(const std::vector<RunRecord>& records, OutputFormat format, const std::string& path);

}  // namespace mupa

#endif  // MUPA_HARNESS_HPP
