#pragma once

// Optical feeder link: slant distance, average channel power gain, split
// receiver throughput, and the two feasibility predicates (backhaul-rate and
// power-harvesting).

#include <cmath>
#include <stdexcept>

#include "fsomc/scenario.hpp"

namespace fsomc {

// Feasibility slacks are compared against a relative tolerance of the
// constraint's right-hand side; the optimizer's closed form makes both
// constraints exactly tight, so exact comparisons would be meaningless.
inline constexpr double kConstraintRelTol = 1e-9;

struct FsoOperatingPoint {
  double p_f_w = 0.0;  // OBS transmit power
  double rho = 0.0;    // share of received power routed to the decoder

  void validate_or_throw() const {
    detail::require(p_f_w > 0.0, "operating_point.p_f", p_f_w, "> 0 W");
    detail::require(rho >= 0.0 && rho <= 1.0, "operating_point.rho", rho, "in [0, 1]");
  }
};

inline double backhaul_distance_m(double h_u_m, const GeometryParams& g) {
  if (h_u_m < g.h0_m) throw std::domain_error("backhaul_distance: h_u must be >= h0");
  return std::hypot(g.l0_m, h_u_m - g.h0_m);
}

// Average optical channel power gain: aperture-over-beam footprint ratio
// times weather attenuation, scaled by responsivity and mean pointing loss.
inline double fso_gain(double h_u_m, const Scenario& s) {
  const double l_back = backhaul_distance_m(h_u_m, s.geom);
  const double geometric = s.fso.tau_combined * s.fso.d_r_m * s.fso.d_r_m /
                           (s.fso.theta_t_rad * s.fso.theta_t_rad * l_back * l_back);
  return geometric * std::pow(10.0, -s.fso.kappa_per_m * l_back / 10.0);
}

struct FsoLinkState {
  double l_back_m = 0.0;
  double omega = 0.0;    // linear channel power gain, in (0, 1)
  double p_rec_w = 0.0;  // average received optical power, p_f * omega
};

inline FsoLinkState fso_link_state(double p_f_w, double h_u_m, const Scenario& s) {
  FsoLinkState st;
  st.l_back_m = backhaul_distance_m(h_u_m, s.geom);
  st.omega = fso_gain(h_u_m, s);
  st.p_rec_w = p_f_w * st.omega;
  return st;
}

// Decoder-branch throughput; the 1/2 prefactor reflects the real-valued
// intensity-modulated channel, beta_loss the lumped implementation losses.
inline double backhaul_rate_bps(const FsoOperatingPoint& op, double h_u_m, const Scenario& s) {
  op.validate_or_throw();
  const double snr = op.p_f_w * fso_gain(h_u_m, s) * op.rho / (s.fso.noise_uav_w * s.fso.beta_loss);
  return 0.5 * s.fso.bandwidth_hz * std::log2(1.0 + snr);
}

struct ConstraintCheck {
  bool satisfied = false;
  double slack = 0.0;  // lhs - rhs; bits/s for the rate constraint, Watts for power
};

// Backhaul-rate constraint: decoder throughput must cover the edge rate.
inline ConstraintCheck fbr_satisfied(const FsoOperatingPoint& op, double h_u_m, double c_edge_bps,
                                     const Scenario& s) {
  if (c_edge_bps < 0.0) throw std::domain_error("fbr_satisfied: c_edge must be >= 0");
  ConstraintCheck out;
  out.slack = backhaul_rate_bps(op, h_u_m, s) - c_edge_bps;
  out.satisfied = out.slack >= -kConstraintRelTol * std::abs(c_edge_bps);
  return out;
}

// Power-harvesting constraint: harvested share must cover hover plus RF
// transmit power.
inline ConstraintCheck fph_satisfied(const FsoOperatingPoint& op, double h_u_m, double p_u_w,
                                     const Scenario& s) {
  if (p_u_w < 0.0) throw std::domain_error("fph_satisfied: p_u must be >= 0");
  op.validate_or_throw();
  const double harvested = s.fso.eta * op.p_f_w * fso_gain(h_u_m, s) * (1.0 - op.rho);
  const double demand = s.geom.p_hov_w + p_u_w;
  ConstraintCheck out;
  out.slack = harvested - demand;
  out.satisfied = out.slack >= -kConstraintRelTol * demand;
  return out;
}

}  // namespace fsomc
