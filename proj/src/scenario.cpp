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

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>
#include <string_view>

#include "mupa/harness.hpp"

namespace mupa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const std::size_t pos = s.find(',');
    const std::string_view item = trim(s.substr(0, pos));
    if (item.empty()) throw FormatError("scenario: empty list item");
    out.emplace_back(item);
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

template <class T>
T parse_num(const std::string& key, std::string_view s) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw FormatError("scenario: bad value for '" + key + "': " + std::string(s));
  }
  return v;
}

bool parse_bool(const std::string& key, std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw FormatError("scenario: bad boolean for '" + key + "'");
}

// Wraps enum parsers so that bad names surface as format errors.
template <class F>
auto parse_named(const std::string& key, const std::string& value, F&& parser) {
  try {
    return parser(value);
  } catch (const std::invalid_argument& e) {
    throw FormatError("scenario: " + key + ": " + e.what());
  }
}

}  // namespace

std::string to_string(PaAlgo algo) {
  switch (algo) {
    case PaAlgo::Native: return "native";
    case PaAlgo::EqualTpc: return "equal_tpc";
    case PaAlgo::EqualPapcStart: return "equal_papc_start";
    case PaAlgo::ImGeo: return "im_geo";
    case PaAlgo::ImEesm: return "im_eesm";
    case PaAlgo::EesmTpc: return "eesm_tpc";
    case PaAlgo::KktPapc: return "kkt_papc";
  }
  return "?";
}

PaAlgo parse_pa_algo(const std::string& name) {
  for (PaAlgo a : {PaAlgo::Native, PaAlgo::EqualTpc, PaAlgo::EqualPapcStart, PaAlgo::ImGeo, PaAlgo::ImEesm,
                   PaAlgo::EesmTpc, PaAlgo::KktPapc}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown pa_algo: " + name);
}

std::string to_string(EffModelKind kind) {
  switch (kind) {
    case EffModelKind::Geometric: return "geo";
    case EffModelKind::EesmFixed: return "eesm_fixed";
    case EffModelKind::EesmTable: return "eesm_table";
  }
  return "?";
}

EffModelKind parse_eff_model(const std::string& name) {
  if (name == "geo") return EffModelKind::Geometric;
  if (name == "eesm_fixed") return EffModelKind::EesmFixed;
  if (name == "eesm_table") return EffModelKind::EesmTable;
  throw std::invalid_argument("unknown eff_model: " + name);
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format: " + name);
}

std::string to_string(ChannelModel model) {
  return model == ChannelModel::Correlated ? "correlated" : "low_correlation";
}

ChannelModel parse_channel_model(const std::string& name) {
  if (name == "correlated") return ChannelModel::Correlated;
  if (name == "low_correlation") return ChannelModel::LowCorrelation;
  throw std::invalid_argument("unknown channel model: " + name);
}

void Scenario::validate() const {
  dims.validate();
  if (snr_db.empty()) throw std::invalid_argument("Scenario: snr_db must be nonempty");
  for (double s : snr_db) {
    if (!std::isfinite(s)) throw std::invalid_argument("Scenario: snr_db must be finite");
  }
  if (seeds < 1) throw std::invalid_argument("Scenario: seeds must be >= 1");
  if (pa_algos.empty()) throw std::invalid_argument("Scenario: pa_algo must be nonempty");
  if (channel == ChannelModel::Correlated && !(corr >= 0.0 && corr < 1.0)) {
    throw std::invalid_argument("Scenario: corr must lie in [0, 1)");
  }
  if (channel == ChannelModel::LowCorrelation && !(corr >= 0.0 && std::isfinite(corr))) {
    throw std::invalid_argument("Scenario: coupling must be finite and nonnegative");
  }
  if (precoder_reg && !(*precoder_reg >= 0.0)) throw std::invalid_argument("Scenario: reg must be >= 0");
  if (detector_reg && !(*detector_reg >= 0.0)) throw std::invalid_argument("Scenario: det_reg must be >= 0");
  if (!(eesm_beta > 0.0)) throw std::invalid_argument("Scenario: eesm_beta must be positive");
  if (mcs_table_id != 1 && mcs_table_id != 2) throw std::invalid_argument("Scenario: mcs_table must be 1 or 2");
  if (!(P_total > 0.0) || !std::isfinite(P_total)) throw std::invalid_argument("Scenario: p_total must be positive");
}

Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  int T = sc.dims.T;
  int K = sc.dims.users();
  int R = sc.dims.rx.front();
  int L = sc.dims.layers.front();
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError("scenario: line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw FormatError("scenario: line " + std::to_string(line_no) + ": empty key or value");
    if (!seen.insert(key).second) throw FormatError("scenario: duplicate key '" + key + "'");
    const std::string v(value);

    if (key == "T") T = parse_num<int>(key, value);
    else if (key == "K") K = parse_num<int>(key, value);
    else if (key == "R") R = parse_num<int>(key, value);
    else if (key == "L") L = parse_num<int>(key, value);
    else if (key == "channel") sc.channel = parse_named(key, v, parse_channel_model);
    else if (key == "corr") sc.corr = parse_num<double>(key, value);
    else if (key == "snr_db") {
      sc.snr_db.clear();
      for (const std::string& s : split_list(value)) sc.snr_db.push_back(parse_num<double>(key, s));
    } else if (key == "seeds") sc.seeds = parse_num<int>(key, value);
    else if (key == "master_seed") sc.master_seed = parse_num<std::uint64_t>(key, value);
    else if (key == "precoder") sc.precoder = parse_named(key, v, parse_precoder_type);
    else if (key == "reg") sc.precoder_reg = parse_num<double>(key, value);
    else if (key == "det_reg") sc.detector_reg = parse_num<double>(key, value);
    else if (key == "pa_algo") {
      sc.pa_algos.clear();
      for (const std::string& s : split_list(value)) sc.pa_algos.push_back(parse_named(key, s, parse_pa_algo));
    } else if (key == "baseline") sc.baseline = parse_named(key, v, parse_pa_algo);
    else if (key == "detector") sc.detector = parse_named(key, v, parse_detector_type);
    else if (key == "eff_model") sc.eff_model = parse_named(key, v, parse_eff_model);
    else if (key == "eesm_beta") sc.eesm_beta = parse_num<double>(key, value);
    else if (key == "mcs_table") sc.mcs_table_id = parse_num<int>(key, value);
    else if (key == "p_total") sc.P_total = parse_num<double>(key, value);
    else if (key == "constraint") {
      if (v == "papc") sc.constraint = ConstraintMode::PAPC;
      else if (v == "tpc") sc.constraint = ConstraintMode::TPC;
      else throw FormatError("scenario: constraint must be papc or tpc");
    } else if (key == "record_runtime") sc.record_runtime = parse_bool(key, value);
    else throw FormatError("scenario: unknown key '" + key + "'");
  }
  sc.dims = SystemDims::uniform(T, K, R, L);
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open " + path);
  return parse_scenario(in);
}

}  // namespace mupa
