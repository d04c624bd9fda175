// Copyright 2026 The lhvsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stable machine-readable output. CSV files have one header line, LF line
// endings, '.' decimals and shortest round-trip formatting of doubles. JSON
// documents carry a `meta` object and a `rows` array mirroring the CSV
// columns.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lhvsim/experiments.hpp"
#include "lhvsim/types.hpp"

namespace lhvsim::io {

inline constexpr std::string_view version = "1.0.0";

inline constexpr std::string_view sweep_header =
    "theta,p_pp_mc,p_pm_mc,p_mp_mc,p_mm_mc,p_pp,p_pm,p_mp,p_mm,corr_mc,corr,n_pairs,seed";
inline constexpr std::string_view region_header = "eta,v,sin_feasible,line_feasible,chsh_violated,gap";
inline constexpr std::string_view chsh_header = "quantity,value,std_error";

enum class OutputFormat { csv, json };

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), result.ptr);
}

inline std::string_view format_bool(bool b) { return b ? "true" : "false"; }

/// Run metadata shared by the JSON documents.
struct Meta {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::optional<ModelParams> params;
};

inline nlohmann::json to_json(const Meta& meta) {
  nlohmann::json j;
  j["command"] = meta.command;
  j["version"] = std::string(version);
  j["seed"] = meta.seed ? nlohmann::json(*meta.seed) : nlohmann::json(nullptr);
  if (meta.params) {
    const ModelParams& p = *meta.params;
    j["params"] = {{"eta", p.eta}, {"v", p.v},   {"model", std::string(model_name(p.kind))},
                   {"a", p.a},     {"b", p.b},   {"c", p.c}};
  } else {
    j["params"] = nullptr;
  }
  return j;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << sweep_header << '\n';
  for (const SweepRow& r : rows) {
    out << format_double(r.theta) << ',' << format_double(r.mc.p_pp) << ',' << format_double(r.mc.p_pm) << ','
        << format_double(r.mc.p_mp) << ',' << format_double(r.mc.p_mm) << ',' << format_double(r.oracle.p_pp) << ','
        << format_double(r.oracle.p_pm) << ',' << format_double(r.oracle.p_mp) << ','
        << format_double(r.oracle.p_mm) << ',' << format_double(r.corr_mc) << ','
        << format_double(r.corr_oracle) << ',' << r.n_pairs << ',' << r.seed << '\n';
  }
}

inline nlohmann::json sweep_json(const std::vector<SweepRow>& rows, const Meta& meta) {
  nlohmann::json doc;
  doc["meta"] = to_json(meta);
  doc["rows"] = nlohmann::json::array();
  for (const SweepRow& r : rows) {
    doc["rows"].push_back({{"theta", r.theta},
                           {"p_pp_mc", r.mc.p_pp},
                           {"p_pm_mc", r.mc.p_pm},
                           {"p_mp_mc", r.mc.p_mp},
                           {"p_mm_mc", r.mc.p_mm},
                           {"p_pp", r.oracle.p_pp},
                           {"p_pm", r.oracle.p_pm},
                           {"p_mp", r.oracle.p_mp},
                           {"p_mm", r.oracle.p_mm},
                           {"corr_mc", std::isnan(r.corr_mc) ? nlohmann::json(nullptr) : nlohmann::json(r.corr_mc)},
                           {"corr", r.corr_oracle},
                           {"n_pairs", r.n_pairs},
                           {"seed", r.seed}});
  }
  return doc;
}

inline void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows) {
  out << region_header << '\n';
  for (const RegionRow& r : rows) {
    out << format_double(r.eta) << ',' << format_double(r.v) << ',' << format_bool(r.verdict.sin_feasible) << ','
        << format_bool(r.verdict.line_feasible) << ',' << format_bool(r.verdict.chsh_violated) << ','
        << format_bool(r.verdict.gap) << '\n';
  }
}

inline nlohmann::json region_json(const std::vector<RegionRow>& rows, const Meta& meta) {
  nlohmann::json doc;
  doc["meta"] = to_json(meta);
  doc["rows"] = nlohmann::json::array();
  for (const RegionRow& r : rows) {
    doc["rows"].push_back({{"eta", r.eta},
                           {"v", r.v},
                           {"sin_feasible", r.verdict.sin_feasible},
                           {"line_feasible", r.verdict.line_feasible},
                           {"chsh_violated", r.verdict.chsh_violated},
                           {"gap", r.verdict.gap}});
  }
  return doc;
}

/// Key/value table: E_AC..E_BD (with standard errors), S_mc, S, bound, violated.
inline void write_chsh_csv(std::ostream& out, const ChshReport& report) {
  out << chsh_header << '\n';
  for (const ChshSetting& s : report.settings) {
    out << "E_" << s.label << ',' << format_double(s.corr_mc) << ',' << format_double(s.std_error) << '\n';
  }
  out << "S_mc," << format_double(report.s_mc) << ',' << format_double(report.s_sigma) << '\n';
  out << "S," << format_double(report.s_oracle) << ",\n";
  out << "bound," << format_double(report.bound) << ",\n";
  out << "violated," << format_bool(report.violated_mc) << ",\n";
}

inline nlohmann::json chsh_json(const ChshReport& report, const Meta& meta) {
  nlohmann::json doc;
  doc["meta"] = to_json(meta);
  doc["meta"]["angles"] = {report.angles.phi_a, report.angles.phi_b, report.angles.phi_c, report.angles.phi_d};
  doc["rows"] = nlohmann::json::array();
  for (const ChshSetting& s : report.settings) {
    doc["rows"].push_back({{"setting", s.label},
                           {"angle_1", s.angle_1},
                           {"angle_2", s.angle_2},
                           {"corr_mc", std::isnan(s.corr_mc) ? nlohmann::json(nullptr) : nlohmann::json(s.corr_mc)},
                           {"std_error", s.std_error},
                           {"corr", s.corr_oracle}});
  }
  doc["summary"] = {{"s_mc", report.s_mc},
                    {"s_sigma", report.s_sigma},
                    {"s", report.s_oracle},
                    {"bound", report.bound},
                    {"violated", report.violated_mc}};
  return doc;
}

} // namespace lhvsim::io
