#pragma once

#include <utility>
#include <vector>

#include "alphasun/params.hpp"

namespace alphasun {

// Everything known about one order: the exact coefficient magnitude, the
// two-sided polylog bounds (0 < gamma < 1 only), the supremum bound, and
// the two asymptotic estimates. lower can dip below zero at small n; it
// is then vacuous and only the upper inequality means anything.
struct BoundReport {
  int n = 0;
  double t_exact = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double sup_bound = 0.0;
  double estimate_steepest = 0.0;
  double estimate_simple = 0.0;
  bool polylog_valid = false;  // gamma < 1, so lower/upper are defined
  bool lower_vacuous = true;   // lower <= 0, no two-sided claim at this n
};

// Upper bound (1-alpha)^gamma gamma^{-n} Li_{1-n-gamma}(alpha) / Gamma(gamma).
// Valid for 0 < gamma < 1, 0 < alpha < 1 only; DomainError otherwise.
double t_upper_polylog(const Params& p, int n);

// Companion lower bound, subtracting the (1-gamma) Li_{2-n-gamma} term.
// Same hypothesis; may be negative (vacuous) at small n.
double t_lower_polylog(const Params& p, int n);

// Saddle point r_0 of the supremum bound: the root of
// r + n/gamma = W0((n/(alpha gamma)) e^{n/gamma}), equivalently
// alpha e^r = n/(n + gamma r). Lies in (n ln(1/alpha)/(n+gamma), ln(1/alpha)).
double saddle_r0(const Params& p, int n);

// Supremum bound (1-alpha)^gamma n! (gamma r_0)^{-n-gamma} (n+gamma r_0)^gamma,
// any gamma > 0, n >= 1. Log form stays finite past n! overflow.
double t_sup_bound(const Params& p, int n);
double t_sup_bound_log(const Params& p, int n);

// Saddle z_0 of the steepest-descent estimate:
// alpha e^{z_0} (n+1+gamma z_0) = n+1, same bracket with n+1 in place of n.
double saddle_z0(const Params& p, int n);

// Signed steepest-descent estimate
// (-1)^n (1-alpha)^gamma (2 pi)^{-1/2} n! gamma^{-n} (n+1)^{-1/2}
//   z_0^{-n-gamma} (z_0+(n+1)/gamma)^gamma (z_0+(n+1)/gamma+1)^{-1/2}.
// The gamma^{-n} is the prefactor of the coefficient integral and has to
// survive the saddle evaluation; without it the estimate is off by
// gamma^n, which only γ = 1 hides.
double t_estimate_steepest(const Params& p, int n);
double t_estimate_steepest_log(const Params& p, int n);  // ln of magnitude

// Simpler signed estimate (-1)^n (1-alpha)^gamma (gamma)_n gamma^{-n} L^{-n-gamma}
// with L = ln(1/alpha).
double t_estimate_simple(const Params& p, int n);
double t_estimate_simple_log(const Params& p, int n);

// Full report at one order; polylog fields are populated only for
// gamma < 1.
BoundReport bound_report(const Params& p, int n);

// Ratio sequences against the exact t, computed on commonly scaled
// tables so they stay finite to m_max = 200. First element is m = 1.
// -d_m/(m t_m), limit 1.
std::vector<std::pair<int, double>> ratio_d_over_t(const Params& p, int m_max);
// f_n/t_n via the divisor route, limit -1.
std::vector<std::pair<int, double>> ratio_f_over_t(const Params& p, int n_max);

// Least-squares slope and intercept of log|y| against log m over the
// second half of a ratio-deviation sequence; used to certify decay rates.
struct DecayFit {
  double exponent = 0.0;   // slope
  double amplitude = 0.0;  // exp(intercept)
};
DecayFit fit_decay(const std::vector<std::pair<int, double>>& deviations);

// Iterates x_n = 1 + x_{n-1}^2, x_1 = 1 (1, 2, 5, 26, 677, ...) carried in
// log space; returns x_n^{1/2^n}, converging to 1.2259024435...
double tree_growth_constant(int n_iters);

// kappa = c^2/2 for the constant above; the f/t ratio error decays like
// kappa^n up to a log factor.
double tree_kappa();

// Contour-integral cross-check of t_n: trapezoidal quadrature of the
// coefficient integral over a circle of radius 0.5 ln(1/alpha), 2^12
// nodes. Small n only; DomainError past n = 8.
double t_loop_integral(const Params& p, int n);

}  // namespace alphasun
