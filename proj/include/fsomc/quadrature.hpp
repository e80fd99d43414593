#pragma once

// Adaptive composite Simpson integration on a finite interval.
//
// The rule starts from a set of seed panels (callers integrating sharply
// concentrated densities pass breakpoints that resolve the concentration),
// estimates a global absolute budget from a pilot pass, and then refines
// panels recursively with the usual |S2 - S1|/15 acceptance test and
// Richardson extrapolation. Tolerances are purely relative: integrands in
// this project range over ~1e-9 .. 1e8 and any absolute floor would be
// wrong for one end of that range.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsomc {

struct QuadratureSpec {
  double relative_tolerance = 1e-9;
  int max_subdivisions = 1 << 14;

  void validate_or_throw() const {
    if (!(relative_tolerance > 0.0 && relative_tolerance <= 1e-3)) {
      throw std::invalid_argument("quadrature.relative_tolerance must be in (0, 1e-3]");
    }
    if (max_subdivisions < 16) {
      throw std::invalid_argument("quadrature.max_subdivisions must be >= 16");
    }
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated |S2 - S1| / 15, absolute
  int subdivisions = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double value, double error_estimate)
      : std::runtime_error(msg), value_(value), error_estimate_(error_estimate) {}
  double value() const { return value_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

namespace detail {

struct Panel {
  double a, b;
  double fa, fm, fb;
  double simpson;  // Simpson estimate on [a, b]
  double eps;      // absolute acceptance budget for this panel
};

inline double simpson_sum(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace detail

template <class F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi, const QuadratureSpec& spec,
                                    std::span<const double> breakpoints = {}) {
  spec.validate_or_throw();
  if (!(hi > lo)) {
    if (hi == lo) return {};
    throw std::invalid_argument("integrate_adaptive: hi must be >= lo");
  }

  std::vector<double> knots;
  knots.push_back(lo);
  for (double x : breakpoints) {
    if (x > lo && x < hi) knots.push_back(x);
  }
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  // Guarantee a minimum seed resolution even without caller hints.
  while (knots.size() < 17) {
    std::vector<double> refined;
    refined.reserve(knots.size() * 2);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      refined.push_back(knots[i]);
      refined.push_back(0.5 * (knots[i] + knots[i + 1]));
    }
    refined.push_back(knots.back());
    knots.swap(refined);
  }

  std::vector<detail::Panel> stack;
  stack.reserve(knots.size() + 64);
  double pilot = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    detail::Panel p;
    p.a = knots[i];
    p.b = knots[i + 1];
    p.fa = f(p.a);
    p.fb = f(p.b);
    p.fm = f(0.5 * (p.a + p.b));
    p.simpson = detail::simpson_sum(p.a, p.b, p.fa, p.fm, p.fb);
    p.eps = 0.0;  // assigned after the pilot sum is known
    stack.push_back(p);
    pilot += p.simpson;
  }
  if (pilot == 0.0) {
    bool all_zero = true;
    for (const auto& p : stack) {
      if (p.fa != 0.0 || p.fm != 0.0 || p.fb != 0.0) all_zero = false;
    }
    if (all_zero) return {0.0, 0.0, 0};
  }

  const double eps_total = spec.relative_tolerance * std::max(std::abs(pilot), 1e-300);
  const double span_len = hi - lo;
  for (auto& p : stack) p.eps = eps_total * (p.b - p.a) / span_len;

  QuadratureResult out;
  int splits = 0;
  while (!stack.empty()) {
    detail::Panel p = stack.back();
    stack.pop_back();

    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double s_left = detail::simpson_sum(p.a, m, p.fa, flm, p.fm);
    const double s_right = detail::simpson_sum(m, p.b, p.fm, frm, p.fb);
    const double delta = (s_left + s_right - p.simpson) / 15.0;

    if (std::abs(delta) <= p.eps || (p.b - p.a) <= 1e-14 * span_len) {
      out.value += s_left + s_right + delta;
      out.error_estimate += std::abs(delta);
      continue;
    }
    if (++splits > spec.max_subdivisions) {
      double rest = s_left + s_right;
      double rest_err = std::abs(delta);
      for (const auto& q : stack) {
        rest += q.simpson;
        rest_err += 15.0 * q.eps;
      }
      throw QuadratureError(
          "integrate_adaptive: subdivision budget (" + std::to_string(spec.max_subdivisions) +
              ") exhausted, achieved error estimate " + std::to_string(out.error_estimate + rest_err),
          out.value + rest, out.error_estimate + rest_err);
    }
    stack.push_back({p.a, m, p.fa, flm, p.fm, s_left, 0.5 * p.eps});
    stack.push_back({m, p.b, p.fm, frm, p.fb, s_right, 0.5 * p.eps});
  }
  out.subdivisions = splits;
  return out;
}

}  // namespace fsomc
