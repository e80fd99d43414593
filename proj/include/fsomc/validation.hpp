#pragma once

// Independent correctness machinery: exhaustive grid search over the full
// four-variable design space, a reduced search that applies the closed-form
// optics per (power, altitude) pair, and Monte Carlo simulation of the PPP
// user field validating the edge-radius law and the edge-rate integral.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsomc/a2g_channel.hpp"
#include "fsomc/edge_rate.hpp"
#include "fsomc/optimizer.hpp"
#include "fsomc/rng.hpp"
#include "fsomc/scenario.hpp"

namespace fsomc {

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double at(int i) const {
    if (count == 1) return min;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

struct GridSpec {
  GridAxis p_f;
  GridAxis rho;
  GridAxis h_u;
  GridAxis p_u;

  void validate_or_throw(const Scenario& s) const {
    auto check = [](const GridAxis& ax, const std::string& name, double lo, double hi) {
      if (ax.count < 1) throw std::invalid_argument("grid." + name + ".count must be >= 1");
      if (ax.count > 1 && !(ax.max > ax.min)) {
        throw std::invalid_argument("grid." + name + " range must have max > min");
      }
      if (ax.min < lo || ax.max > hi) {
        throw std::invalid_argument("grid." + name + " range outside variable domain");
      }
    };
    check(p_f, "p_f", 0.0, 1e300);
    check(rho, "rho", 0.0, 1.0);
    check(h_u, "h_u", s.geom.h0_m, s.geom.h_max_m);
    check(p_u, "p_u", 0.0, s.rf.p_max_w);
  }
};

struct BruteForceResult {
  DesignVariables best;
  double ee_system = 0.0;
  std::uint64_t n_evaluated = 0;
  std::uint64_t n_feasible = 0;
};

// Exhaustive search: every grid tuple is checked against both feasibility
// constraints with the exact edge rate; the best feasible efficiency wins.
inline BruteForceResult brute_force_p1(const Scenario& s, const GridSpec& grid,
                                       const QuadratureSpec& quad = {}) {
  grid.validate_or_throw(s);
  BruteForceResult out;
  bool found = false;
  for (int ih = 0; ih < grid.h_u.count; ++ih) {
    const double h = grid.h_u.at(ih);
    for (int ip = 0; ip < grid.p_u.count; ++ip) {
      const double p_u = grid.p_u.at(ip);
      const double c = edge_rate(p_u, h, s, quad).c_edge_bps;
      for (int ipf = 0; ipf < grid.p_f.count; ++ipf) {
        for (int ir = 0; ir < grid.rho.count; ++ir) {
          ++out.n_evaluated;
          const FsoOperatingPoint op{grid.p_f.at(ipf), grid.rho.at(ir)};
          if (op.p_f_w <= 0.0) continue;
          if (!fbr_satisfied(op, h, c, s).satisfied) continue;
          if (!fph_satisfied(op, h, p_u, s).satisfied) continue;
          ++out.n_feasible;
          const double ee = c / op.p_f_w;
          if (!found || ee > out.ee_system) {
            found = true;
            out.ee_system = ee;
            out.best = DesignVariables{op.p_f_w, op.rho, h, p_u};
          }
        }
      }
    }
  }
  if (!found) throw std::runtime_error("brute_force_p1: empty feasible set");
  return out;
}

// Reduced search: the optics pair is replaced by its closed form per
// (p_u, h_u), which shrinks the grid to two dimensions.
inline BruteForceResult brute_force_reduced(const Scenario& s, int n_p_u, int n_h_u,
                                            const QuadratureSpec& quad = {}) {
  if (n_p_u < 2 || n_h_u < 2) throw std::invalid_argument("brute_force_reduced: counts must be >= 2");
  BruteForceResult out;
  bool found = false;
  for (int ih = 0; ih < n_h_u; ++ih) {
    const double h = s.geom.h0_m + (s.geom.h_max_m - s.geom.h0_m) * ih / (n_h_u - 1.0);
    for (int ip = 1; ip <= n_p_u; ++ip) {
      const double p_u = s.rf.p_max_w * ip / static_cast<double>(n_p_u);
      ++out.n_evaluated;
      const double c = edge_rate(p_u, h, s, quad).c_edge_bps;
      const QFactors q = q_factors(c, p_u, h, s);
      const double p_f = q.q_i_w + q.q_e_w;
      const double ee = c / p_f;
      ++out.n_feasible;
      if (!found || ee > out.ee_system) {
        found = true;
        out.ee_system = ee;
        out.best = DesignVariables{p_f, q.q_i_w / p_f, h, p_u};
      }
    }
  }
  return out;
}

struct DropSample {
  std::vector<double> gu_radii_m;
  std::optional<double> edge_radius_m;  // empty realization -> nullopt
  double realized_edge_rate_low_bps = 0.0;
  double realized_edge_rate_full_bps = 0.0;
};

namespace detail {

struct DropGeometry {
  long count = 0;
  std::optional<double> max_radius;
};

// One PPP realization on the disk: count ~ Poisson(pi lambda r0^2), radii
// r = r0 sqrt(u) with u uniform (exact for the homogeneous disk). The mc_*
// routines consume the identical draw sequence without storing radii.
inline DropGeometry drop_geometry(Rng& rng, double lambda, double r0,
                                  std::vector<double>* store) {
  DropGeometry g;
  const double mean = std::numbers::pi * lambda * r0 * r0;
  g.count = rng.poisson(mean);
  for (long i = 0; i < g.count; ++i) {
    const double r = r0 * std::sqrt(rng.uniform01());
    if (store != nullptr) store->push_back(r);
    if (!g.max_radius || r > *g.max_radius) g.max_radius = r;
  }
  return g;
}

}  // namespace detail

// Geometry-only sample; rate fields stay zero until realized against a
// scenario and operating point.
inline DropSample ppp_drop(double lambda_g_per_m2, double r0_m, std::uint64_t seed) {
  if (!(lambda_g_per_m2 > 0.0) || !(r0_m > 0.0)) {
    throw std::domain_error("ppp_drop: lambda_g and r0 must be > 0");
  }
  Rng rng(seed);
  DropSample sample;
  const auto geo = detail::drop_geometry(rng, lambda_g_per_m2, r0_m, &sample.gu_radii_m);
  sample.edge_radius_m = geo.max_radius;
  return sample;
}

inline void realize_drop_rates(DropSample& sample, double p_u_w, double h_u_m, const Scenario& s) {
  if (!sample.edge_radius_m) {
    sample.realized_edge_rate_low_bps = 0.0;
    sample.realized_edge_rate_full_bps = 0.0;
    return;
  }
  sample.realized_edge_rate_low_bps = rate_lower_bound_bps(*sample.edge_radius_m, h_u_m, p_u_w, s);
  sample.realized_edge_rate_full_bps = avg_rate_bps(*sample.edge_radius_m, h_u_m, p_u_w, s);
}

struct EdgeCdfTable {
  std::vector<double> r_m;        // 100-point grid ending at r0
  std::vector<double> empirical;  // P(R_edge <= r), empty drops counted everywhere
  std::vector<double> analytic;
  double sup_deviation = 0.0;
};

inline EdgeCdfTable mc_edge_distribution(const Scenario& s, long n_drops, std::uint64_t seed) {
  if (n_drops < 1000) throw std::invalid_argument("mc_edge_distribution: n_drops must be >= 1000");
  const double r0 = s.geom.r0_m;
  const int n_grid = 100;
  EdgeCdfTable table;
  table.r_m.resize(n_grid);
  for (int k = 0; k < n_grid; ++k) table.r_m[k] = r0 * static_cast<double>(k + 1) / n_grid;

  std::vector<long> hist(n_grid, 0);
  for (long i = 0; i < n_drops; ++i) {
    Rng rng(derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
    const auto geo = detail::drop_geometry(rng, s.geom.lambda_g_per_m2, r0, nullptr);
    const double r_edge = geo.max_radius.value_or(0.0);  // empty: below every grid point
    const auto it = std::lower_bound(table.r_m.begin(), table.r_m.end(), r_edge);
    ++hist[static_cast<std::size_t>(it - table.r_m.begin())];
  }

  table.empirical.resize(n_grid);
  table.analytic.resize(n_grid);
  long cumulative = 0;
  for (int k = 0; k < n_grid; ++k) {
    cumulative += hist[k];
    table.empirical[k] = static_cast<double>(cumulative) / static_cast<double>(n_drops);
    table.analytic[k] = edge_cdf(table.r_m[k], s.geom.lambda_g_per_m2, r0);
    table.sup_deviation =
        std::max(table.sup_deviation, std::abs(table.empirical[k] - table.analytic[k]));
  }
  return table;
}

struct McEdgeRate {
  double mean_low_bps = 0.0;
  double mean_full_bps = 0.0;
  long n_drops = 0;
  long n_empty = 0;
};

// Sample mean of the edge-user rate (lower-bound and full forms); empty
// realizations contribute zero, matching the unconditional-expectation
// convention of the analytic edge rate.
inline McEdgeRate mc_edge_rate(const Scenario& s, double p_u_w, double h_u_m, long n_drops,
                               std::uint64_t seed) {
  if (n_drops < 1000) throw std::invalid_argument("mc_edge_rate: n_drops must be >= 1000");
  KahanAccumulator low, full;
  McEdgeRate out;
  out.n_drops = n_drops;
  for (long i = 0; i < n_drops; ++i) {
    Rng rng(derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
    const auto geo = detail::drop_geometry(rng, s.geom.lambda_g_per_m2, s.geom.r0_m, nullptr);
    if (!geo.max_radius) {
      ++out.n_empty;
      continue;
    }
    low.add(rate_lower_bound_bps(*geo.max_radius, h_u_m, p_u_w, s));
    full.add(avg_rate_bps(*geo.max_radius, h_u_m, p_u_w, s));
  }
  out.mean_low_bps = low.value() / static_cast<double>(n_drops);
  out.mean_full_bps = full.value() / static_cast<double>(n_drops);
  return out;
}

struct ValidationRow {
  std::string check;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Scenario-generic property suite behind the `validate` command. Sampling
// tolerances are sized so that verdicts are seed-stable.
inline std::vector<ValidationRow> run_validation_suite(const Scenario& s, std::uint64_t seed,
                                                       long n_drops,
                                                       const QuadratureSpec& quad = {}) {
  s.validate_or_throw();
  if (n_drops < 1000) throw std::invalid_argument("run_validation_suite: n_drops must be >= 1000");
  std::vector<ValidationRow> rows;
  const double lambda = s.geom.lambda_g_per_m2;
  const double r0 = s.geom.r0_m;
  const double mean_count = std::numbers::pi * lambda * r0 * r0;

  // Count moments and the empty-realization atom.
  KahanAccumulator count_acc;
  long empties = 0;
  for (long i = 0; i < n_drops; ++i) {
    Rng rng(derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
    const auto geo = detail::drop_geometry(rng, lambda, r0, nullptr);
    count_acc.add(static_cast<double>(geo.count));
    if (!geo.max_radius) ++empties;
  }
  {
    ValidationRow r{"poisson-count-mean", mean_count,
                    count_acc.value() / static_cast<double>(n_drops),
                    5.0 * std::sqrt(mean_count / static_cast<double>(n_drops)), false};
    r.pass = std::abs(r.observed - r.expected) <= r.tolerance;
    rows.push_back(r);
  }
  {
    const double p_empty = std::exp(-mean_count);
    ValidationRow r{"empty-drop-probability", p_empty,
                    static_cast<double>(empties) / static_cast<double>(n_drops),
                    5.0 * std::sqrt(std::max(p_empty * (1.0 - p_empty), 1e-12) /
                                    static_cast<double>(n_drops)) +
                        2.0 / static_cast<double>(n_drops),
                    false};
    r.pass = std::abs(r.observed - r.expected) <= r.tolerance;
    rows.push_back(r);
  }
  {
    const auto table = mc_edge_distribution(s, n_drops, seed);
    ValidationRow r{"edge-cdf-sup-deviation", 0.0, table.sup_deviation,
                    2.5 / std::sqrt(static_cast<double>(n_drops)), false};
    r.pass = r.observed <= r.tolerance;
    rows.push_back(r);
  }
  {
    // Mean edge rate against the quadrature value, at mid power and altitude.
    const double p_u = 0.5 * s.rf.p_max_w;
    const double h_u = 0.5 * (s.geom.h0_m + s.geom.h_max_m);
    const auto mc = mc_edge_rate(s, p_u, h_u, n_drops, seed);
    const double analytic = edge_rate(p_u, h_u, s, quad).c_edge_bps;
    ValidationRow r{"mc-edge-rate-vs-quadrature", analytic, mc.mean_low_bps,
                    std::max(0.01 * analytic, 8.0 * analytic / std::sqrt(static_cast<double>(n_drops))),
                    false};
    r.pass = std::abs(r.observed - r.expected) <= r.tolerance;
    rows.push_back(r);
    rows.push_back(ValidationRow{"mc-rate-lower-bound-order", 0.0,
                                 mc.mean_low_bps - mc.mean_full_bps, 0.0,
                                 mc.mean_low_bps <= mc.mean_full_bps});
  }
  {
    // pdf mass identity against the closed form.
    const auto mass = integrate_adaptive([&](double r) { return edge_pdf(r, lambda, r0); }, 0.0,
                                         r0, quad, edge_quadrature_breakpoints(lambda, r0));
    ValidationRow r{"edge-pdf-mass", 1.0 - std::exp(-mean_count), mass.value, 1e-8, false};
    r.pass = std::abs(r.observed - r.expected) <= r.tolerance;
    rows.push_back(r);
  }
  {
    // Upper bound holds where its curvature condition is met.
    const double h_bound = std::sqrt(s.env.alpha_los + 1.0) * r0;
    if (h_bound < s.geom.h_max_m) {
      const double h = std::min(s.geom.h_max_m, 1.05 * h_bound);
      const auto er = edge_rate(s.rf.p_max_w, h, s, quad);
      ValidationRow r{"jensen-upper-bound", 0.0,
                      (er.c_edge_bps - er.c_edge_upper_bps) / er.c_edge_upper_bps, 1e-12, false};
      r.pass = r.observed <= r.tolerance;
      rows.push_back(r);
    }
  }
  {
    // Bit-identical resampling of one stream.
    const std::uint64_t drop_seed = derive_stream_seed(seed, 7);
    const DropSample a = ppp_drop(lambda, r0, drop_seed);
    const DropSample b = ppp_drop(lambda, r0, drop_seed);
    const bool same = a.gu_radii_m == b.gu_radii_m && a.edge_radius_m == b.edge_radius_m;
    rows.push_back(ValidationRow{"drop-determinism", 0.0, same ? 0.0 : 1.0, 0.0, same});
  }
  {
    // Monte Carlo error should halve per quadrupling of the sample count.
    const double p_u = 0.5 * s.rf.p_max_w;
    const double h_u = 0.5 * (s.geom.h0_m + s.geom.h_max_m);
    const double analytic = edge_rate(p_u, h_u, s, quad).c_edge_bps;
    const int reps = 8;
    const long levels[3] = {std::max(1000L, n_drops / 16), std::max(1000L, n_drops / 4), n_drops};
    double rms[3] = {0.0, 0.0, 0.0};
    for (int li = 0; li < 3; ++li) {
      KahanAccumulator sq;
      for (int rep = 0; rep < reps; ++rep) {
        const auto mc = mc_edge_rate(s, p_u, h_u, levels[li],
                                     derive_stream_seed(seed, 1000 + 100 * li + rep));
        const double err = mc.mean_low_bps - analytic;
        sq.add(err * err);
      }
      rms[li] = std::sqrt(sq.value() / reps);
    }
    // Two quadruplings of n: the RMS error ratio should be ~4, i.e. ~2 in
    // log2. Band accounts for chi-square noise at 8 replicates.
    ValidationRow r{"mc-error-sqrt-n-scaling-log2", 2.0, std::log2(rms[0] / rms[2]), 1.1, false};
    r.pass = std::abs(r.observed - r.expected) <= r.tolerance;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace fsomc
