#pragma once

// Air-to-ground channel: elevation-angle LoS probability, distance-power
// gain, and the per-user multicast rate together with its LoS-only lower
// bound.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsomc/scenario.hpp"

namespace fsomc {

// Elevation angle in degrees seen from a ground user at radius r toward a
// UAV hovering at altitude h_u. Defined as 90 at r = 0 (vertical limit).
inline double elevation_angle_deg(double r_m, double h_u_m) {
  if (h_u_m <= 0.0) throw std::domain_error("elevation_angle_deg: h_u must be > 0");
  if (r_m < 0.0) throw std::domain_error("elevation_angle_deg: r must be >= 0");
  if (r_m == 0.0) return 90.0;
  return 180.0 / std::numbers::pi * std::atan(h_u_m / r_m);
}

inline double los_probability(double r_m, double h_u_m, const EnvironmentParams& env) {
  const double theta = elevation_angle_deg(r_m, h_u_m);
  return 1.0 / (1.0 + env.a * std::exp(-env.b * (theta - env.a)));
}

// Distance-power gain (h_u^2 + r^2)^(-alpha/2) for the LoS or NLoS branch.
inline double a2g_gain(double r_m, double h_u_m, bool los, const EnvironmentParams& env) {
  if (h_u_m <= 0.0) throw std::domain_error("a2g_gain: h_u must be > 0");
  if (r_m < 0.0) throw std::domain_error("a2g_gain: r must be >= 0");
  const double alpha = los ? env.alpha_los : env.alpha_nlos;
  return std::pow(h_u_m * h_u_m + r_m * r_m, -0.5 * alpha);
}

// LoS-weighted share of the rate; this is the lower bound that the edge-rate
// integral builds on.
inline double rate_lower_bound_bps(double r_m, double h_u_m, double p_u_w, const Scenario& s) {
  if (p_u_w < 0.0) throw std::domain_error("rate_lower_bound: p_u must be >= 0");
  const double snr_los = p_u_w / s.env.noise_los_w * a2g_gain(r_m, h_u_m, true, s.env);
  return los_probability(r_m, h_u_m, s.env) * s.rf.bandwidth_hz * std::log2(1.0 + snr_los);
}

// Average rate over the LoS/NLoS mixture.
inline double avg_rate_bps(double r_m, double h_u_m, double p_u_w, const Scenario& s) {
  if (p_u_w < 0.0) throw std::domain_error("avg_rate: p_u must be >= 0");
  const double p_los = los_probability(r_m, h_u_m, s.env);
  const double snr_los = p_u_w / s.env.noise_los_w * a2g_gain(r_m, h_u_m, true, s.env);
  const double snr_nlos = p_u_w / s.env.noise_nlos_w * a2g_gain(r_m, h_u_m, false, s.env);
  return p_los * s.rf.bandwidth_hz * std::log2(1.0 + snr_los) +
         (1.0 - p_los) * s.rf.bandwidth_hz * std::log2(1.0 + snr_nlos);
}

}  // namespace fsomc
