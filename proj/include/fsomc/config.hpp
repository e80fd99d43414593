#pragma once

// Scenario ingestion from flat INI-style files with sections [environment],
// [rf], [fso], [geometry]. Values are SI except the explicitly suffixed
// conveniences: beta_db (decibels) and *_mw (milliwatts) are converted once
// here. The loader is strict: every field must be present exactly once, and
// unknown keys are rejected.

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fsomc/scenario.hpp"

namespace fsomc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using IniSection = std::map<std::string, std::string>;
using IniData = std::map<std::string, IniSection>;

namespace detail {

inline std::string trim(const std::string& in) {
  const auto first = in.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = in.find_last_not_of(" \t\r\n");
  return in.substr(first, last - first + 1);
}

inline double parse_number(const std::string& section, const std::string& key,
                           const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": cannot parse '" + value + "' as a number");
  }
  if (used != value.size()) {
    throw ConfigError("[" + section + "] " + key + ": trailing characters in '" + value + "'");
  }
  return out;
}

}  // namespace detail

inline IniData parse_ini(const std::string& text) {
  IniData data;
  std::string section;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(line_no) + ": empty section name");
      }
      data[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!data[section].emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "' in [" +
                        section + "]");
    }
  }
  return data;
}

namespace detail {

class SectionReader {
 public:
  SectionReader(const IniData& data, std::string name) : name_(std::move(name)) {
    const auto it = data.find(name_);
    if (it == data.end()) throw ConfigError("missing section [" + name_ + "]");
    section_ = &it->second;
  }

  double get(const std::string& key) {
    const auto it = section_->find(key);
    if (it == section_->end()) throw ConfigError("missing key '" + key + "' in [" + name_ + "]");
    consumed_.insert(key);
    return parse_number(name_, key, it->second);
  }

  // One of `si_key` (SI) or `alt_key` (with converter) must be present.
  template <class Convert>
  double get_either(const std::string& si_key, const std::string& alt_key, Convert convert) {
    const bool has_si = section_->count(si_key) > 0;
    const bool has_alt = section_->count(alt_key) > 0;
    if (has_si && has_alt) {
      throw ConfigError("[" + name_ + "]: specify exactly one of '" + si_key + "' and '" +
                        alt_key + "'");
    }
    if (has_si) return get(si_key);
    if (has_alt) return convert(get(alt_key));
    throw ConfigError("missing key '" + si_key + "' (or '" + alt_key + "') in [" + name_ + "]");
  }

  void reject_unknown() const {
    for (const auto& [key, value] : *section_) {
      if (consumed_.count(key) == 0) {
        throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
      }
    }
  }

 private:
  std::string name_;
  const IniSection* section_;
  std::set<std::string> consumed_;
};

inline double mw_to_w(double mw) { return mw * 1e-3; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace detail

inline Scenario scenario_from_ini(const IniData& data) {
  for (const auto& [section, keys] : data) {
    if (section != "environment" && section != "rf" && section != "fso" && section != "geometry") {
      throw ConfigError("unknown section [" + section + "]");
    }
  }
  Scenario s;

  detail::SectionReader env(data, "environment");
  s.env.a = env.get("a");
  s.env.b = env.get("b");
  s.env.alpha_los = env.get("alpha_los");
  s.env.alpha_nlos = env.get("alpha_nlos");
  s.env.noise_los_w = env.get_either("noise_los", "noise_los_mw", detail::mw_to_w);
  s.env.noise_nlos_w = env.get_either("noise_nlos", "noise_nlos_mw", detail::mw_to_w);
  env.reject_unknown();

  detail::SectionReader rf(data, "rf");
  s.rf.bandwidth_hz = rf.get("bandwidth_hz");
  s.rf.p_max_w = rf.get("p_max");
  s.rf.file_bits = rf.get("file_bits");
  rf.reject_unknown();

  detail::SectionReader fso(data, "fso");
  s.fso.bandwidth_hz = fso.get("bandwidth_hz");
  s.fso.beta_loss = fso.get_either("beta", "beta_db", detail::db_to_linear);
  s.fso.kappa_per_m = fso.get("kappa");
  s.fso.theta_t_rad = fso.get("theta_t");
  s.fso.d_r_m = fso.get("d_r");
  s.fso.tau_combined = fso.get("tau_combined");
  s.fso.eta = fso.get("eta");
  s.fso.noise_uav_w = fso.get_either("noise_uav", "noise_uav_mw", detail::mw_to_w);
  fso.reject_unknown();

  detail::SectionReader geom(data, "geometry");
  s.geom.h0_m = geom.get("h0");
  s.geom.h_max_m = geom.get("h_max");
  s.geom.l0_m = geom.get("l0");
  s.geom.r0_m = geom.get("r0");
  s.geom.lambda_g_per_m2 = geom.get("lambda_g");
  s.geom.p_hov_w = geom.get("p_hov");
  geom.reject_unknown();

  s.validate_or_throw();
  return s;
}

inline Scenario load_scenario_text(const std::string& text) {
  return scenario_from_ini(parse_ini(text));
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str());
}

// Canonical text form (plain SI keys, 12 significant digits); also the byte
// stream that the scenario hash is computed over.
inline std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os.precision(12);
  os << "[environment]\n"
     << "a = " << s.env.a << "\n"
     << "b = " << s.env.b << "\n"
     << "alpha_los = " << s.env.alpha_los << "\n"
     << "alpha_nlos = " << s.env.alpha_nlos << "\n"
     << "noise_los = " << s.env.noise_los_w << "\n"
     << "noise_nlos = " << s.env.noise_nlos_w << "\n"
     << "[rf]\n"
     << "bandwidth_hz = " << s.rf.bandwidth_hz << "\n"
     << "p_max = " << s.rf.p_max_w << "\n"
     << "file_bits = " << s.rf.file_bits << "\n"
     << "[fso]\n"
     << "bandwidth_hz = " << s.fso.bandwidth_hz << "\n"
     << "beta = " << s.fso.beta_loss << "\n"
     << "kappa = " << s.fso.kappa_per_m << "\n"
     << "theta_t = " << s.fso.theta_t_rad << "\n"
     << "d_r = " << s.fso.d_r_m << "\n"
     << "tau_combined = " << s.fso.tau_combined << "\n"
     << "eta = " << s.fso.eta << "\n"
     << "noise_uav = " << s.fso.noise_uav_w << "\n"
     << "[geometry]\n"
     << "h0 = " << s.geom.h0_m << "\n"
     << "h_max = " << s.geom.h_max_m << "\n"
     << "l0 = " << s.geom.l0_m << "\n"
     << "r0 = " << s.geom.r0_m << "\n"
     << "lambda_g = " << s.geom.lambda_g_per_m2 << "\n"
     << "p_hov = " << s.geom.p_hov_w << "\n";
  return os.str();
}

}  // namespace fsomc
