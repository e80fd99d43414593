#pragma once

// Immutable scenario parameters for the FSO-powered UAV multicast model.
// Everything is stored in SI units (Watts, Hz, meters, bits); config-side
// conveniences such as dB or mW are converted once at ingestion.

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fsomc {

// IM/DD throughput degenerates to the known capacity lower bound at
// beta = 2*pi/e; smaller values would claim better-than-ideal hardware.
inline constexpr double kBetaLossMin = 2.0 * std::numbers::pi / std::numbers::e;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

[[noreturn]] inline void fail(const std::string& field, double value, const std::string& bound) {
  throw ValidationError(field + " (" + num(value) + ") must be " + bound);
}

inline void require(bool ok, const std::string& field, double value, const std::string& bound) {
  if (!ok) fail(field, value, bound);
}

}  // namespace detail

struct EnvironmentParams {
  double a = 27.23;             // LoS model constant (dimensionless)
  double b = 0.08;              // LoS model constant (per degree of elevation)
  double alpha_los = 3.0;       // LoS path-loss exponent
  double alpha_nlos = 5.0;      // NLoS path-loss exponent
  double noise_los_w = 1e-9;    // received noise power, LoS branch [W]
  double noise_nlos_w = 8e-10;  // received noise power, NLoS branch [W]

  void validate_or_throw() const {
    detail::require(a > 0.0, "environment.a", a, "> 0");
    detail::require(b > 0.0, "environment.b", b, "> 0");
    detail::require(alpha_los >= 2.0, "environment.alpha_los", alpha_los, ">= 2");
    detail::require(alpha_nlos > alpha_los, "environment.alpha_nlos", alpha_nlos,
                    "> environment.alpha_los (" + detail::num(alpha_los) + ")");
    detail::require(noise_los_w > 0.0, "environment.noise_los", noise_los_w, "> 0 W");
    detail::require(noise_nlos_w > 0.0, "environment.noise_nlos", noise_nlos_w, "> 0 W");
  }
};

// Constants of the elevation-angle LoS model for two reference environments.
inline EnvironmentParams high_rise_urban() { return EnvironmentParams{27.23, 0.08, 3.0, 5.0, 1e-9, 8e-10}; }
inline EnvironmentParams dense_urban() { return EnvironmentParams{12.08, 0.11, 3.0, 5.0, 1e-9, 8e-10}; }

struct RfLinkParams {
  double bandwidth_hz = 2e7;  // multicast RF bandwidth B
  double p_max_w = 0.2;       // UAV transmit power cap
  double file_bits = 1e9;     // common file size delivered to every user

  void validate_or_throw() const {
    detail::require(bandwidth_hz > 0.0, "rf.bandwidth_hz", bandwidth_hz, "> 0");
    detail::require(p_max_w > 0.0, "rf.p_max", p_max_w, "> 0 W");
    detail::require(file_bits > 0.0, "rf.file_bits", file_bits, "> 0");
  }
};

struct FsoLinkParams {
  double bandwidth_hz = 1e9;   // optical channel bandwidth W
  double beta_loss = 31.6227766016838;  // lumped implementation SNR loss (linear, 15 dB)
  double kappa_per_m = 4.3e-4; // weather attenuation coefficient
  double theta_t_rad = 0.06;   // full transmit divergence angle
  double d_r_m = 0.2;          // receiver aperture diameter
  double tau_combined = 0.9;   // responsivity x average geometric/misalignment loss
  double eta = 0.2;            // power-harvesting efficiency (linear model)
  double noise_uav_w = 1e-9;   // receiver noise power at the UAV

  void validate_or_throw() const {
    detail::require(bandwidth_hz > 0.0, "fso.bandwidth_hz", bandwidth_hz, "> 0");
    detail::require(beta_loss >= kBetaLossMin, "fso.beta", beta_loss,
                    ">= 2*pi/e (" + detail::num(kBetaLossMin) + ")");
    detail::require(kappa_per_m >= 0.0, "fso.kappa", kappa_per_m, ">= 0");
    detail::require(theta_t_rad > 0.0, "fso.theta_t", theta_t_rad, "> 0 rad");
    detail::require(d_r_m > 0.0, "fso.d_r", d_r_m, "> 0 m");
    detail::require(tau_combined > 0.0 && tau_combined < 1.0, "fso.tau_combined", tau_combined,
                    "in (0, 1)");
    detail::require(eta > 0.0 && eta < 1.0, "fso.eta", eta, "in (0, 1)");
    detail::require(noise_uav_w > 0.0, "fso.noise_uav", noise_uav_w, "> 0 W");
  }
};

struct GeometryParams {
  double h0_m = 60.0;            // optics base station altitude
  double h_max_m = 200.0;        // UAV altitude ceiling
  double l0_m = 150.0;           // horizontal OBS-to-cell offset
  double r0_m = 50.0;            // service disk radius
  double lambda_g_per_m2 = 0.05; // ground-user density
  double p_hov_w = 1000.0;       // hover propulsion power

  void validate_or_throw() const {
    detail::require(h0_m > 0.0, "geometry.h0", h0_m, "> 0 m");
    detail::require(h_max_m > h0_m, "geometry.h_max", h_max_m,
                    "> geometry.h0 (" + detail::num(h0_m) + ")");
    detail::require(l0_m >= 0.0, "geometry.l0", l0_m, ">= 0 m");
    detail::require(r0_m > 0.0, "geometry.r0", r0_m, "> 0 m");
    detail::require(lambda_g_per_m2 > 0.0, "geometry.lambda_g", lambda_g_per_m2, "> 0 per m^2");
    detail::require(p_hov_w > 0.0, "geometry.p_hov", p_hov_w, "> 0 W");
  }
};

struct Scenario {
  EnvironmentParams env;
  RfLinkParams rf;
  FsoLinkParams fso;
  GeometryParams geom;

  void validate_or_throw() const {
    env.validate_or_throw();
    rf.validate_or_throw();
    fso.validate_or_throw();
    geom.validate_or_throw();
    if (!(fso.bandwidth_hz > rf.bandwidth_hz)) {
      throw ValidationError("fso.bandwidth_hz (" + detail::num(fso.bandwidth_hz) +
                            ") must be > rf.bandwidth_hz (" + detail::num(rf.bandwidth_hz) + ")");
    }
  }
};

// Reference setup: high-rise urban cell of radius 50 m under a 1 kW-hover UAV
// fed from an OBS 60 m high and 150 m away.
inline Scenario default_scenario() {
  Scenario s;
  s.env = high_rise_urban();
  s.rf = RfLinkParams{};
  s.fso = FsoLinkParams{};
  s.geom = GeometryParams{};
  return s;
}

}  // namespace fsomc
