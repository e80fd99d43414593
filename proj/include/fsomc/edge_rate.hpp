#pragma once

// Edge-user statistics under a homogeneous PPP on the service disk: the
// distribution of the largest user radius, the multicast (edge) rate
// integral, and its log-of-mean upper bound used by the optimizer.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fsomc/a2g_channel.hpp"
#include "fsomc/quadrature.hpp"
#include "fsomc/scenario.hpp"

namespace fsomc {

// P(R_edge <= r): probability that the annulus (r, r0] holds no user.
// The value at r = 0 is the empty-realization atom exp(-pi*lambda*r0^2).
inline double edge_cdf(double r_m, double lambda_g_per_m2, double r0_m) {
  if (r_m < 0.0 || r_m > r0_m) throw std::domain_error("edge_cdf: r must be in [0, r0]");
  return std::exp(-std::numbers::pi * lambda_g_per_m2 * (r0_m * r0_m - r_m * r_m));
}

// Density of R_edge on (0, r0]; integrates to 1 - exp(-pi*lambda*r0^2), the
// missing mass being the empty-realization atom (which contributes zero rate).
inline double edge_pdf(double r_m, double lambda_g_per_m2, double r0_m) {
  if (r_m < 0.0 || r_m > r0_m) throw std::domain_error("edge_pdf: r must be in [0, r0]");
  return edge_cdf(r_m, lambda_g_per_m2, r0_m) * 2.0 * std::numbers::pi * lambda_g_per_m2 * r_m;
}

// Seed knots for integrals weighted by the edge pdf. The pdf concentrates in
// a band of width ~1/(2*pi*lambda*r0) below r0, which uniform panels would
// miss entirely at high density; knots are spaced one e-fold apart there.
inline std::vector<double> edge_quadrature_breakpoints(double lambda_g_per_m2, double r0_m) {
  std::vector<double> knots;
  for (int k = 1; k < 8; ++k) knots.push_back(r0_m * static_cast<double>(k) / 8.0);
  const double efold = 1.0 / (std::numbers::pi * lambda_g_per_m2);  // in u = r0^2 - r^2
  const double u_max = r0_m * r0_m;
  for (int j = 1; j <= 45; ++j) {
    const double u = static_cast<double>(j) * efold;
    if (u >= u_max) break;
    knots.push_back(std::sqrt(u_max - u));
  }
  return knots;
}

struct EdgeRateResult {
  double c_edge_bps = 0.0;        // pdf-weighted mean of the per-user rate lower bound
  double c_edge_upper_bps = 0.0;  // mu * B * log2(1 + p_u * y)
  double mu_factor = 0.0;         // pdf-weighted LoS probability mass
  double y_factor_per_w = 0.0;    // per-Watt SNR slope of the upper bound
  bool bound_valid = false;       // true iff h_u > sqrt(alpha_los + 1) * r0
  double c_edge_abs_err_bps = 0.0;  // achieved quadrature error estimate
};

inline EdgeRateResult edge_rate(double p_u_w, double h_u_m, const Scenario& s,
                                const QuadratureSpec& quad = {}) {
  if (p_u_w < 0.0) throw std::domain_error("edge_rate: p_u must be >= 0");
  if (h_u_m <= 0.0) throw std::domain_error("edge_rate: h_u must be > 0");

  const double lambda = s.geom.lambda_g_per_m2;
  const double r0 = s.geom.r0_m;
  const auto knots = edge_quadrature_breakpoints(lambda, r0);

  const auto rate = integrate_adaptive(
      [&](double r) { return rate_lower_bound_bps(r, h_u_m, p_u_w, s) * edge_pdf(r, lambda, r0); },
      0.0, r0, quad, knots);
  const auto mass = integrate_adaptive(
      [&](double r) { return los_probability(r, h_u_m, s.env) * edge_pdf(r, lambda, r0); }, 0.0,
      r0, quad, knots);
  const auto slope = integrate_adaptive(
      [&](double r) {
        return los_probability(r, h_u_m, s.env) * a2g_gain(r, h_u_m, true, s.env) *
               edge_pdf(r, lambda, r0);
      },
      0.0, r0, quad, knots);

  EdgeRateResult out;
  out.mu_factor = mass.value;
  if (!(out.mu_factor > 0.0)) {
    throw std::logic_error("edge_rate: mu must be positive (LoS probability is never zero)");
  }
  out.y_factor_per_w = slope.value / (s.env.noise_los_w * out.mu_factor);
  out.c_edge_bps = rate.value;
  out.c_edge_abs_err_bps = rate.error_estimate;
  out.c_edge_upper_bps =
      out.mu_factor * s.rf.bandwidth_hz * std::log2(1.0 + p_u_w * out.y_factor_per_w);
  out.bound_valid = h_u_m > std::sqrt(s.env.alpha_los + 1.0) * r0;
  return out;
}

// Time to push the whole file to the worst-placed user.
inline double mission_time_s(double file_bits, double c_edge_bps) {
  if (!(c_edge_bps > 0.0)) {
    throw std::domain_error("mission_time: infeasible-coverage, edge rate is zero");
  }
  return file_bits / c_edge_bps;
}

}  // namespace fsomc
