#pragma once

// System-level energy-efficiency maximization.
//
// Decomposition: for fixed UAV power and altitude, the cheapest feasible OBS
// power and split ratio have a closed form (both constraints tight). The
// remaining two variables are searched as follows: a per-altitude inner
// optimum of the UAV power against the upper-bound surrogate objective (the
// surrogate's partial derivative is strictly decreasing, so the inner optimum
// is either the power cap or a bisection root), and an outer 1-D grid over
// altitude. The returned report is always re-evaluated with the exact edge
// rate so reported efficiencies never inherit the surrogate approximation.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fsomc/edge_rate.hpp"
#include "fsomc/fso_link.hpp"
#include "fsomc/quadrature.hpp"
#include "fsomc/scenario.hpp"

namespace fsomc {

struct QFactors {
  double q_i_w = 0.0;  // minimum OBS power share feeding the decoder branch
  double q_e_w = 0.0;  // minimum OBS power share feeding the harvester branch
};

struct DesignVariables {
  double p_f_w = 0.0;
  double rho = 0.0;
  double h_u_m = 0.0;
  double p_u_w = 0.0;
};

inline QFactors q_factors(double c_edge_bps, double p_u_w, double h_u_m, const Scenario& s) {
  const double omega = fso_gain(h_u_m, s);
  QFactors q;
  q.q_i_w = s.fso.noise_uav_w * s.fso.beta_loss / omega *
            (std::exp2(2.0 * c_edge_bps / s.fso.bandwidth_hz) - 1.0);
  q.q_e_w = (p_u_w + s.geom.p_hov_w) / (s.fso.eta * omega);
  return q;
}

// Cheapest feasible optical operating point for given UAV power and altitude;
// makes both feasibility constraints exactly tight.
inline std::pair<FsoOperatingPoint, QFactors> optimal_fso(double p_u_w, double h_u_m,
                                                          const Scenario& s,
                                                          const QuadratureSpec& quad = {}) {
  const double c = edge_rate(p_u_w, h_u_m, s, quad).c_edge_bps;
  const QFactors q = q_factors(c, p_u_w, h_u_m, s);
  FsoOperatingPoint op;
  op.p_f_w = q.q_i_w + q.q_e_w;
  op.rho = q.q_i_w / op.p_f_w;
  return {op, q};
}

inline double ee_u_exact(double p_u_w, double h_u_m, const Scenario& s,
                         const QuadratureSpec& quad = {}) {
  const double c = edge_rate(p_u_w, h_u_m, s, quad).c_edge_bps;
  const QFactors q = q_factors(c, p_u_w, h_u_m, s);
  return c / (q.q_i_w + q.q_e_w);
}

// Per-altitude constants of the surrogate objective.
struct AltitudeContext {
  double h_u_m = 0.0;
  double mu = 0.0;        // pdf-weighted LoS mass
  double y_per_w = 0.0;   // per-Watt SNR slope
  double omega = 0.0;     // optical channel gain
};

inline AltitudeContext make_altitude_context(double h_u_m, const Scenario& s,
                                             const QuadratureSpec& quad = {}) {
  const EdgeRateResult er = edge_rate(0.0, h_u_m, s, quad);
  return {h_u_m, er.mu_factor, er.y_factor_per_w, fso_gain(h_u_m, s)};
}

namespace detail {

// Expanded surrogate objective
//   EEt(p) = A log2(1 + p y) / ((1 + p y)^e + k p + c0)
// with A = mu B omega / (sigma_U^2 beta), e = 2 mu B / W,
// k = 1/(eta sigma_U^2 beta), c0 = k P_hov - 1. The same constants feed the
// analytic derivative below.
struct SurrogateTerms {
  double amp, expo, slope_k, offset, y;
};

inline SurrogateTerms surrogate_terms(const AltitudeContext& ctx, const Scenario& s) {
  SurrogateTerms t;
  const double sb = s.fso.noise_uav_w * s.fso.beta_loss;
  t.amp = ctx.mu * s.rf.bandwidth_hz * ctx.omega / sb;
  t.expo = 2.0 * ctx.mu * s.rf.bandwidth_hz / s.fso.bandwidth_hz;
  t.slope_k = 1.0 / (s.fso.eta * sb);
  t.offset = t.slope_k * s.geom.p_hov_w - 1.0;
  t.y = ctx.y_per_w;
  return t;
}

}  // namespace detail

inline double ee_u_tilde(double p_u_w, const AltitudeContext& ctx, const Scenario& s) {
  const auto t = detail::surrogate_terms(ctx, s);
  const double base = 1.0 + p_u_w * t.y;
  const double num = t.amp * std::log2(base);
  const double den = std::pow(base, t.expo) + t.slope_k * p_u_w + t.offset;
  return num / den;
}

inline double ee_u_tilde(double p_u_w, double h_u_m, const Scenario& s,
                         const QuadratureSpec& quad = {}) {
  return ee_u_tilde(p_u_w, make_altitude_context(h_u_m, s, quad), s);
}

// Partial derivative of the surrogate objective in the UAV power, by the
// quotient rule; strictly decreasing and positive at zero power.
inline double inner_power_derivative(double p_u_w, const AltitudeContext& ctx, const Scenario& s) {
  if (p_u_w < 0.0) throw std::domain_error("inner_power_derivative: p_u must be >= 0");
  const auto t = detail::surrogate_terms(ctx, s);
  const double base = 1.0 + p_u_w * t.y;
  const double num = t.amp * std::log2(base);
  const double den = std::pow(base, t.expo) + t.slope_k * p_u_w + t.offset;
  const double d_num = t.amp * t.y / (std::log(2.0) * base);
  const double d_den = t.expo * t.y * std::pow(base, t.expo - 1.0) + t.slope_k;
  return (d_num * den - num * d_den) / (den * den);
}

inline double inner_power_derivative(double p_u_w, double h_u_m, const Scenario& s,
                                     const QuadratureSpec& quad = {}) {
  return inner_power_derivative(p_u_w, make_altitude_context(h_u_m, s, quad), s);
}

// Inner optimum: the power cap while the derivative is still positive there,
// otherwise the unique root of the derivative, found by bisection.
inline double optimal_power_at_altitude(const AltitudeContext& ctx, const Scenario& s) {
  if (inner_power_derivative(s.rf.p_max_w, ctx, s) > 0.0) return s.rf.p_max_w;
  double lo = 1e-12;
  double hi = s.rf.p_max_w;
  if (!(inner_power_derivative(lo, ctx, s) > 0.0)) {
    throw std::logic_error("optimal_power_at_altitude: derivative bracket [0, p_max] invalid");
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (inner_power_derivative(mid, ctx, s) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double optimal_power_at_altitude(double h_u_m, const Scenario& s,
                                        const QuadratureSpec& quad = {}) {
  if (h_u_m < s.geom.h0_m || h_u_m > s.geom.h_max_m) {
    throw std::domain_error("optimal_power_at_altitude: h_u must be in [h0, h_max]");
  }
  return optimal_power_at_altitude(make_altitude_context(h_u_m, s, quad), s);
}

struct AltitudeRecord {
  double h_u_m = 0.0;
  double p_u_w = 0.0;        // per-altitude inner optimum
  double ee_u_tilde = 0.0;   // surrogate objective at the inner optimum
  double ee_u_exact = 0.0;   // exact objective at the inner optimum
  double c_edge_bps = 0.0;   // exact edge rate
  double p_f_w = 0.0;        // closed-form OBS power at this altitude
  double rho = 0.0;
  double omega = 0.0;
  double p_rec_w = 0.0;      // p_f(h) * omega(h), received power under re-optimized OBS power
};

struct AuxiliaryAltitudes {
  double h_ph_m = 0.0;        // argmax of omega: received power under a fixed OBS power
  double h_mc_m = 0.0;        // argmax of the exact edge rate
  double h_ph_solved_pf_m = 0.0;  // argmax of p_f(h) * omega(h): the re-optimized reading
};

struct SolutionReport {
  DesignVariables design;
  double ee_system = 0.0;   // c_edge / p_f
  double ee_u_exact = 0.0;
  double ee_u_tilde = 0.0;
  double c_edge_bps = 0.0;
  QFactors q;
  double fbr_slack_bps = 0.0;
  double fph_slack_w = 0.0;
  double snr_fso = 0.0;     // decoder-branch SNR p_f omega rho / (sigma_U^2 beta)
  AuxiliaryAltitudes aux;
  std::vector<AltitudeRecord> altitude_profile;
  double delta_m = 0.0;
};

inline std::vector<AltitudeRecord> compute_altitude_profile(const Scenario& s, double delta_m,
                                                            const QuadratureSpec& quad = {}) {
  if (!(delta_m > 0.0)) throw std::invalid_argument("compute_altitude_profile: delta must be > 0");
  const int n = static_cast<int>(std::floor((s.geom.h_max_m - s.geom.h0_m) / delta_m));
  std::vector<AltitudeRecord> profile;
  profile.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double h = s.geom.h0_m + static_cast<double>(i) * delta_m;
    const AltitudeContext ctx = make_altitude_context(h, s, quad);
    AltitudeRecord rec;
    rec.h_u_m = h;
    rec.p_u_w = optimal_power_at_altitude(ctx, s);
    rec.ee_u_tilde = ee_u_tilde(rec.p_u_w, ctx, s);
    rec.c_edge_bps = edge_rate(rec.p_u_w, h, s, quad).c_edge_bps;
    const QFactors q = q_factors(rec.c_edge_bps, rec.p_u_w, h, s);
    rec.p_f_w = q.q_i_w + q.q_e_w;
    rec.rho = q.q_i_w / rec.p_f_w;
    rec.ee_u_exact = rec.c_edge_bps / rec.p_f_w;
    rec.omega = ctx.omega;
    rec.p_rec_w = rec.p_f_w * rec.omega;
    profile.push_back(rec);
  }
  return profile;
}

inline AuxiliaryAltitudes auxiliary_altitudes_from_profile(const std::vector<AltitudeRecord>& prof) {
  AuxiliaryAltitudes aux;
  double best_omega = -1.0, best_c = -1.0, best_prec = -1.0;
  for (const auto& r : prof) {
    if (r.omega > best_omega) { best_omega = r.omega; aux.h_ph_m = r.h_u_m; }
    if (r.c_edge_bps > best_c) { best_c = r.c_edge_bps; aux.h_mc_m = r.h_u_m; }
    if (r.p_rec_w > best_prec) { best_prec = r.p_rec_w; aux.h_ph_solved_pf_m = r.h_u_m; }
  }
  return aux;
}

inline AuxiliaryAltitudes auxiliary_altitudes(const Scenario& s, double delta_m = 1.0,
                                              const QuadratureSpec& quad = {}) {
  return auxiliary_altitudes_from_profile(compute_altitude_profile(s, delta_m, quad));
}

// Full solve: grid the altitude, keep the best surrogate value (strict
// improvement, so exact ties resolve to the lowest altitude), then report the
// chosen design with exact edge rate, tight closed-form optics, and slacks.
inline SolutionReport solve(const Scenario& s, double delta_m = 1.0,
                            const QuadratureSpec& quad = {}) {
  s.validate_or_throw();
  SolutionReport rep;
  rep.delta_m = delta_m;
  rep.altitude_profile = compute_altitude_profile(s, delta_m, quad);

  const AltitudeRecord* best = nullptr;
  double best_val = 0.0;
  for (const auto& rec : rep.altitude_profile) {
    if (best == nullptr || rec.ee_u_tilde > best_val) {
      best = &rec;
      best_val = rec.ee_u_tilde;
    }
  }

  rep.design = DesignVariables{best->p_f_w, best->rho, best->h_u_m, best->p_u_w};
  rep.c_edge_bps = best->c_edge_bps;
  rep.q = q_factors(best->c_edge_bps, best->p_u_w, best->h_u_m, s);
  rep.ee_system = rep.c_edge_bps / rep.design.p_f_w;
  rep.ee_u_exact = best->ee_u_exact;
  rep.ee_u_tilde = best->ee_u_tilde;

  const FsoOperatingPoint op{rep.design.p_f_w, rep.design.rho};
  rep.fbr_slack_bps = fbr_satisfied(op, rep.design.h_u_m, rep.c_edge_bps, s).slack;
  rep.fph_slack_w = fph_satisfied(op, rep.design.h_u_m, rep.design.p_u_w, s).slack;
  rep.snr_fso = rep.design.p_f_w * best->omega * rep.design.rho /
                (s.fso.noise_uav_w * s.fso.beta_loss);
  rep.aux = auxiliary_altitudes_from_profile(rep.altitude_profile);
  return rep;
}

}  // namespace fsomc
