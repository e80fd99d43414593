// Command-line surface: scenario ingestion, single solve, figure-recipe
// parameter sweeps, and the Monte Carlo / property validation suite. All
// tabular output is CSV with '#' metadata lines.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fsomc/config.hpp"
#include "fsomc/csv.hpp"
#include "fsomc/optimizer.hpp"
#include "fsomc/scenario.hpp"
#include "fsomc/sweep.hpp"
#include "fsomc/validation.hpp"
#include "fsomc/version.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

int cmd_solve(const std::string& config_path, double delta, const std::string& out_path) {
  const fsomc::Scenario s = fsomc::load_scenario_file(config_path);
  const fsomc::SolutionReport rep = fsomc::solve(s, delta);

  fsomc::RunMetadata meta;
  meta.delta_m = delta;
  std::cout << fsomc::metadata_block(s, meta);
  using fsomc::format_number;
  std::cout << "p_f_w       = " << format_number(rep.design.p_f_w) << "\n"
            << "rho         = " << format_number(rep.design.rho) << "\n"
            << "h_u_m       = " << format_number(rep.design.h_u_m) << "\n"
            << "p_u_w       = " << format_number(rep.design.p_u_w) << "\n"
            << "ee_system   = " << format_number(rep.ee_system) << " bits/J\n"
            << "ee_u_exact  = " << format_number(rep.ee_u_exact) << " bits/J\n"
            << "ee_u_tilde  = " << format_number(rep.ee_u_tilde) << " bits/J\n"
            << "c_edge      = " << format_number(rep.c_edge_bps) << " bits/s\n"
            << "q_i_w       = " << format_number(rep.q.q_i_w) << "\n"
            << "q_e_w       = " << format_number(rep.q.q_e_w) << "\n"
            << "snr_fso     = " << format_number(rep.snr_fso) << "\n"
            << "fbr_slack   = " << format_number(rep.fbr_slack_bps) << " bits/s\n"
            << "fph_slack   = " << format_number(rep.fph_slack_w) << " W\n"
            << "mission_time= " << format_number(fsomc::mission_time_s(s.rf.file_bits, rep.c_edge_bps))
            << " s\n"
            << "h_ph        = " << format_number(rep.aux.h_ph_m) << " m\n"
            << "h_mc        = " << format_number(rep.aux.h_mc_m) << " m\n"
            << "h_ph_opt_pf = " << format_number(rep.aux.h_ph_solved_pf_m) << " m\n"
            << "altitudes   = " << rep.altitude_profile.size() << "\n";
  if (!out_path.empty()) {
    write_output(fsomc::to_csv(rep.altitude_profile, s, meta), out_path);
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& preset_name,
              const std::string& param_name, double min, double max, int steps, bool log_spacing,
              std::optional<double> fixed_p_u, double delta, const std::string& out_path) {
  const fsomc::Scenario base = fsomc::load_scenario_file(config_path);
  fsomc::Scenario scenario = base;
  fsomc::SweepRequest req;
  fsomc::RunMetadata meta;
  meta.delta_m = delta;
  if (!preset_name.empty()) {
    fsomc::SweepPreset preset = fsomc::make_preset(preset_name, base);
    scenario = preset.scenario;
    req = preset.request;
    meta.extra.emplace_back("preset", preset.name);
  } else {
    req.param = fsomc::parse_sweep_param(param_name);
    req.min = min;
    req.max = max;
    req.steps = steps;
    req.log_spacing = log_spacing;
    req.delta_m = delta;
    req.fixed_p_u_w = fixed_p_u;
  }
  const fsomc::SweepTable table = fsomc::run_sweep(scenario, req, {});
  write_output(fsomc::to_csv(table, scenario, meta), out_path);
  return 0;
}

int cmd_validate(const std::string& config_path, std::uint64_t seed, long drops,
                 const std::string& out_path) {
  const fsomc::Scenario s = fsomc::load_scenario_file(config_path);
  const auto rows = fsomc::run_validation_suite(s, seed, drops);
  fsomc::RunMetadata meta;
  meta.seed = seed;
  meta.extra.emplace_back("drops", std::to_string(drops));
  write_output(fsomc::to_csv(rows, s, meta), out_path);
  int failures = 0;
  for (const auto& r : rows) {
    if (!r.pass) ++failures;
  }
  if (failures > 0) {
    std::cerr << "validate: " << failures << " of " << rows.size() << " checks failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FSO-backhauled UAV multicast: edge-rate model and energy-efficiency optimizer"};
  app.set_version_flag("--version", std::string(fsomc::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  double delta = 1.0;

  auto* solve_cmd = app.add_subcommand("solve", "optimize one scenario and print the design");
  solve_cmd->add_option("--config", config_path, "scenario config file")->required();
  solve_cmd->add_option("--delta", delta, "altitude grid step in meters")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", out_path, "write the altitude profile CSV here");

  std::string preset_name, param_name;
  double sweep_min = 0.0, sweep_max = 0.0;
  int sweep_steps = 2;
  bool log_spacing = false;
  double fixed_pu_value = -1.0;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter and emit a CSV table");
  sweep_cmd->add_option("--config", config_path, "scenario config file")->required();
  auto* preset_opt = sweep_cmd->add_option("--preset", preset_name, "figure recipe: fig2..fig5");
  auto* param_opt =
      sweep_cmd->add_option("--param", param_name, "parameter: h_u, lambda_g, p_hov, r0, p_u");
  sweep_cmd->add_option("--min", sweep_min, "sweep range minimum");
  sweep_cmd->add_option("--max", sweep_max, "sweep range maximum");
  sweep_cmd->add_option("--steps", sweep_steps, "number of sweep points");
  sweep_cmd->add_flag("--log", log_spacing, "logarithmic point spacing");
  sweep_cmd->add_option("--fixed-pu", fixed_pu_value,
                        "altitude sweeps: hold p_u at this value instead of optimizing");
  sweep_cmd->add_option("--delta", delta, "altitude grid step in meters")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", out_path, "output CSV path (default: stdout)");
  param_opt->excludes(preset_opt);

  std::uint64_t seed = 42;
  long drops = 100000;
  auto* validate_cmd =
      app.add_subcommand("validate", "run the Monte Carlo / property suite, emit a CSV report");
  validate_cmd->add_option("--config", config_path, "scenario config file")->required();
  validate_cmd->add_option("--seed", seed, "master RNG seed");
  validate_cmd->add_option("--drops", drops, "Monte Carlo drop count")->check(CLI::Range(1000L, 100000000L));
  validate_cmd->add_option("--out", out_path, "output CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(config_path, delta, out_path);
    if (sweep_cmd->parsed()) {
      if (preset_name.empty() && param_name.empty()) {
        std::cerr << "sweep: one of --preset or --param is required\n";
        return 1;
      }
      std::optional<double> fixed_pu;
      if (fixed_pu_value >= 0.0) fixed_pu = fixed_pu_value;
      return cmd_sweep(config_path, preset_name, param_name, sweep_min, sweep_max, sweep_steps,
                       log_spacing, fixed_pu, delta, out_path);
    }
    if (validate_cmd->parsed()) return cmd_validate(config_path, seed, drops, out_path);
  } catch (const fsomc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const fsomc::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
