#pragma once

// CSV emission. Numbers carry 12 significant digits so regression diffs are
// round-trip stable; every emitted document starts with '#' metadata lines
// (tool version, scenario hash, and the run parameters that shaped it).

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsomc/config.hpp"
#include "fsomc/optimizer.hpp"
#include "fsomc/scenario.hpp"
#include "fsomc/validation.hpp"
#include "fsomc/version.hpp"

namespace fsomc {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::uint64_t scenario_hash(const Scenario& s) { return fnv1a64(serialize_scenario(s)); }

struct RunMetadata {
  std::optional<std::uint64_t> seed;
  std::optional<double> delta_m;
  std::vector<std::pair<std::string, std::string>> extra;
};

inline std::string metadata_block(const Scenario& s, const RunMetadata& meta) {
  std::string out;
  out += "# tool=fsomc " + std::string(kVersion) + "\n";
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                static_cast<unsigned long long>(scenario_hash(s)));
  out += "# scenario_hash=" + std::string(hash_buf) + "\n";
  if (meta.seed) out += "# seed=" + std::to_string(*meta.seed) + "\n";
  if (meta.seed) out += "# rng=" + std::string(kRngName) + "\n";
  if (meta.delta_m) out += "# delta=" + format_number(*meta.delta_m) + "\n";
  for (const auto& [key, value] : meta.extra) out += "# " + key + "=" + value + "\n";
  return out;
}

struct SweepRow {
  double swept_value = 0.0;
  double ee_s = 0.0;
  double ee_u = 0.0;
  double ee_u_tilde = 0.0;
  double c_edge = 0.0;
  double p_f = 0.0;
  double rho = 0.0;
  double h_u = 0.0;
  double p_u = 0.0;
  double q_i = 0.0;
  double q_e = 0.0;
  double snr_fso = 0.0;
};

struct SweepTable {
  std::string swept_name;
  std::vector<SweepRow> rows;
};

inline constexpr std::string_view kSweepCsvHeader =
    "swept_value,ee_s,ee_u,ee_u_tilde,c_edge,p_f,rho,h_u,p_u,q_i,q_e,snr_fso";

inline std::string to_csv(const SweepTable& table, const Scenario& s, RunMetadata meta = {}) {
  meta.extra.emplace_back("swept_parameter", table.swept_name);
  std::string out = metadata_block(s, meta);
  out += std::string(kSweepCsvHeader) + "\n";
  for (const auto& r : table.rows) {
    out += format_number(r.swept_value) + "," + format_number(r.ee_s) + "," +
           format_number(r.ee_u) + "," + format_number(r.ee_u_tilde) + "," +
           format_number(r.c_edge) + "," + format_number(r.p_f) + "," + format_number(r.rho) +
           "," + format_number(r.h_u) + "," + format_number(r.p_u) + "," + format_number(r.q_i) +
           "," + format_number(r.q_e) + "," + format_number(r.snr_fso) + "\n";
  }
  return out;
}

inline constexpr std::string_view kValidationCsvHeader = "check,expected,observed,tolerance,pass";

inline std::string to_csv(const std::vector<ValidationRow>& rows, const Scenario& s,
                          RunMetadata meta = {}) {
  std::string out = metadata_block(s, meta);
  out += std::string(kValidationCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += r.check + "," + format_number(r.expected) + "," + format_number(r.observed) + "," +
           format_number(r.tolerance) + "," + (r.pass ? "1" : "0") + "\n";
  }
  return out;
}

inline constexpr std::string_view kProfileCsvHeader =
    "h_u,p_u,ee_u_tilde,ee_u_exact,c_edge,p_f,rho,omega,p_rec";

inline std::string to_csv(const std::vector<AltitudeRecord>& profile, const Scenario& s,
                          RunMetadata meta = {}) {
  std::string out = metadata_block(s, meta);
  out += std::string(kProfileCsvHeader) + "\n";
  for (const auto& r : profile) {
    out += format_number(r.h_u_m) + "," + format_number(r.p_u_w) + "," +
           format_number(r.ee_u_tilde) + "," + format_number(r.ee_u_exact) + "," +
           format_number(r.c_edge_bps) + "," + format_number(r.p_f_w) + "," +
           format_number(r.rho) + "," + format_number(r.omega) + "," + format_number(r.p_rec_w) +
           "\n";
  }
  return out;
}

}  // namespace fsomc
