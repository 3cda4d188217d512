#include "alphasun/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "alphasun/bounds.hpp"
#include "alphasun/density.hpp"
#include "alphasun/errors.hpp"
#include "alphasun/kahan.hpp"
#include "alphasun/parallel.hpp"
#include "alphasun/params.hpp"
#include "alphasun/sequences.hpp"
#include "alphasun/specfun.hpp"

namespace alphasun {
namespace {

constexpr double kAlphaGrid[] = {0.1, 0.3, 0.5, 0.7};
constexpr double kGammaGrid[] = {0.5, 1.0, 2.0, 4.0};
constexpr double kGammaSubOne[] = {0.3, 0.5, 0.7, 0.9};

// Quadratic-map growth constant, x_{n+1} = 1 + x_n^2; the doubling makes
// twelve iterations already exact to double precision.
constexpr double kTreeC = 1.2259024435287485;
constexpr double kTreeKappa = 0.7514184005248782;

double thr(const VerifyOptions& opt, double dflt) {
  return opt.rel_tol ? *opt.rel_tol : dflt;
}

int pool(const VerifyOptions& opt) {
  return opt.threads > 0 ? opt.threads : default_threads();
}

CheckLine residual(std::string label, double measured, double threshold) {
  CheckLine c;
  c.label = std::move(label);
  c.measured = measured;
  c.threshold = threshold;
  c.passed = std::isfinite(measured) && measured <= threshold;
  return c;
}

CheckLine structural(std::string label, bool ok) {
  CheckLine c;
  c.label = std::move(label);
  c.measured = ok ? 1.0 : 0.0;
  c.threshold = 0.5;
  c.passed = ok;
  return c;
}

double rel_gap(double a, double b) {
  const double mag = std::max(std::abs(a), std::abs(b));
  if (mag == 0.0) return 0.0;
  return std::abs(a - b) / mag;
}

// Composite Simpson on a uniform grid of 2*panels+1 nodes.
template <class F>
double simpson(F&& f, double lo, double hi, int panels) {
  const int n = 2 * panels;
  const double h = (hi - lo) / n;
  Kahan<double> s;
  s.add(f(lo));
  s.add(f(hi));
  for (int i = 1; i < n; ++i) s.add(f(lo + i * h) * ((i % 2) ? 4.0 : 2.0));
  return s.value() * h / 3.0;
}

// x at which (1-alpha)^{-gamma} x^{-gamma} equals y.
double x_of_y(const Params& p, double y) {
  return std::exp((-p.gamma * std::log1p(-p.alpha) - std::log(y)) / p.gamma);
}

double y_of_x(const Params& p, double x) {
  return std::exp(-p.gamma * (std::log1p(-p.alpha) + std::log(x)));
}

std::vector<CheckLine> suite_specfun_basics(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  out.push_back(residual("gamma(1/2) vs sqrt(pi)",
                         rel_gap(gamma_fn(0.5), std::sqrt(M_PI)),
                         thr(opt, 1e-14)));
  out.push_back(
      residual("gamma(6) vs 120", rel_gap(gamma_fn(6.0), 120.0), thr(opt, 1e-14)));
  // Gamma(-5/2) = -8 sqrt(pi)/15 via reflection twice.
  out.push_back(residual("gamma(-5/2) reflection",
                         rel_gap(gamma_fn(-2.5), -8.0 * std::sqrt(M_PI) / 15.0),
                         thr(opt, 1e-13)));
  {
    const std::complex<double> ref(0.49801566811835604, -0.15494982830181069);
    out.push_back(residual("gamma(1+i)",
                           std::abs(gamma_fn(std::complex<double>(1.0, 1.0)) - ref) /
                               std::abs(ref),
                           thr(opt, 1e-13)));
  }
  out.push_back(structural("rgamma(-3) = 0", rgamma(-3.0) == 0.0));
  out.push_back(residual("pochhammer(2.5, 3)",
                         rel_gap(pochhammer(2.5, 3), 39.375), thr(opt, 1e-14)));
  out.push_back(residual("log_pochhammer(2.5, 3)",
                         std::abs(log_pochhammer(2.5, 3) - std::log(39.375)),
                         thr(opt, 1e-13)));
  out.push_back(structural("stirling2(10, 3) = 9330", stirling2(10, 3) == 9330));
  out.push_back(residual(
      "2F1(1,1;2;0.3) vs -log(0.7)/0.3",
      rel_gap(gauss_2f1(1.0, 1.0, 2.0, 0.3), -std::log(0.7) / 0.3),
      thr(opt, 1e-13)));
  {
    double worst = 0.0;
    for (double x : {0.1, 1.0, 10.0, 1e8, 1e200}) {
      const double w = lambert_w0(x);
      // w e^w / x - 1 in log space so x = 1e200 does not overflow.
      const double r = std::expm1(w + std::log(w) - std::log(x));
      worst = std::max(worst, std::abs(r));
    }
    out.push_back(residual("lambert_w0 defect", worst, thr(opt, 1e-12)));
  }
  out.push_back(residual("zeta(2)", rel_gap(zeta(2.0), M_PI * M_PI / 6.0),
                         thr(opt, 1e-13)));
  out.push_back(residual("zeta(4)",
                         rel_gap(zeta(4.0), std::pow(M_PI, 4) / 90.0),
                         thr(opt, 1e-13)));
  out.push_back(residual("polylog(-3, 1/2) vs 26",
                         rel_gap(polylog(-3.0, 0.5), 26.0), thr(opt, 1e-12)));
  {
    Kahan<long double> s;
    for (int k = 1; k <= 400; ++k)
      s.add(std::pow(static_cast<long double>(k), 8) *
            std::pow(0.3L, static_cast<long double>(k)));
    out.push_back(residual(
        "polylog(-8, 0.3) vs direct sum",
        rel_gap(polylog(-8.0, 0.3), static_cast<double>(s.value())),
        thr(opt, 1e-11)));
  }
  {
    // Lane consistency at z = -20: the multiprecision lane against a raw
    // long double sum that has lost ~9 digits to cancellation.
    Kahan<long double> s;
    long double term = 1.0L;
    s.add(term);
    for (int k = 0; k < 400; ++k) {
      term *= (1.3L + k) * (0.7L + k) / ((2.1L + k) * (1.9L + k) * (k + 1.0L)) *
              -20.0L;
      s.add(term);
    }
    out.push_back(residual(
        "2F2 lane consistency at z=-20",
        rel_gap(hyp_2f2(1.3, 0.7, 2.1, 1.9, -20.0), static_cast<double>(s.value())),
        thr(opt, 1e-6)));
  }
  return out;
}

std::vector<CheckLine> suite_t_cross_method(const VerifyOptions& opt) {
  std::vector<double> worst(4, 0.0);
  parallel_for(4, pool(opt), [&](int gi) {
    for (double alpha : kAlphaGrid) {
      const Params p{alpha, kGammaGrid[gi]};
      const CoeffTable ts = t_stirling_table(p, 20);
      const CoeffTable tr = t_recurrence(p, 20);
      const CoeffTable ta = t_alpha_series_table(p, 20);
      for (int n = 0; n <= 20; ++n) {
        const double g1 = rel_gap(ts.at(n), tr.at(n));
        const double g2 = rel_gap(ts.at(n), ta.at(n));
        const double g3 = rel_gap(tr.at(n), ta.at(n));
        worst[gi] = std::max({worst[gi], g1, g2, g3});
      }
    }
  });
  std::vector<CheckLine> out;
  for (int gi = 0; gi < 4; ++gi)
    out.push_back(residual(
        "max pairwise gap, gamma=" + std::to_string(kGammaGrid[gi]).substr(0, 3),
        worst[gi], thr(opt, 1e-9)));
  return out;
}

std::vector<CheckLine> suite_closed_polynomials(const VerifyOptions& opt) {
  double dt = 0.0, da = 0.0, df = 0.0, dft = 0.0;
  for (double alpha : {0.05, 0.2, 0.45, 0.65, 0.8, 0.92}) {
    for (double gamma : {0.35, 2.6}) {
      const Params p{alpha, gamma};
      const CoeffTable t = t_stirling_table(p, 6);
      const CoeffTable a = a_from_t(t);
      const CoeffTable f = f_ppe_recursive(t);
      for (int n = 1; n <= 6; ++n) {
        dt = std::max(dt, rel_gap(t.at(n), t_closed(p, n)));
        da = std::max(da, rel_gap(a.at(n), a_closed(p, n)));
        df = std::max(df, rel_gap(f.at(n), f_closed(p, n)));
        dft = std::max(dft, rel_gap(f_from_t_closed(p, n), f_closed(p, n)));
      }
    }
  }
  const double tol = thr(opt, 1e-10);
  std::vector<CheckLine> out;
  out.push_back(residual("t engine vs closed t_1..t_6", dt, tol));
  out.push_back(residual("a engine vs closed a_1..a_6", da, tol));
  out.push_back(residual("f engine vs closed f_1..f_6", df, tol));
  out.push_back(residual("f-from-t closed vs closed f", dft, tol));
  return out;
}

std::vector<CheckLine> suite_sign_pattern(const VerifyOptions& opt) {
  (void)opt;
  std::vector<CheckLine> out;
  for (double gamma : kGammaGrid) {
    bool ok = true;
    for (double alpha : kAlphaGrid)
      ok = ok && sign_alternates(t_stirling_table(Params{alpha, gamma}, 40));
    out.push_back(structural(
        "(-1)^n t_n > 0 to n=40, gamma=" + std::to_string(gamma).substr(0, 3),
        ok));
  }
  return out;
}

std::vector<CheckLine> suite_series_reflexivity(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.2, 3.0}}) {
    const CoeffTable t = t_stirling_table(p, 30);
    const CoeffTable a = a_from_t(t);
    const CoeffTable t2 = t_from_a(as_series(a));
    double dt = 0.0;
    for (int n = 1; n <= 30; ++n) dt = std::max(dt, rel_gap(t.at(n), t2.at(n)));
    const CoeffTable f = f_ppe_recursive(t);
    const CoeffTable a2 = a_from_f(f);
    double daf = 0.0;
    for (int n = 1; n <= 30; ++n)
      daf = std::max(daf, rel_gap(a.at(n), a2.at(n)));
    const std::string tag =
        " (" + std::to_string(p.alpha).substr(0, 3) + "," +
        std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(residual("t -> a -> t round trip" + tag, dt, thr(opt, 1e-11)));
    out.push_back(residual("a -> f -> a round trip" + tag, daf, thr(opt, 1e-11)));
  }
  return out;
}

std::vector<CheckLine> suite_unified_relation(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 2.0}, Params{0.7, 0.5}}) {
    const CoeffTable t = t_stirling_table(p, 20);
    const CoeffTable f = f_ppe_recursive(t);
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(residual("sum t_l a_{m-l} = 0 at " + tag,
                           unified_relation_check(t, f), thr(opt, 1e-9)));
  }
  return out;
}

std::vector<CheckLine> suite_d_a_relation(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 2.0}, Params{0.7, 0.5}}) {
    const CoeffTable t = t_stirling_table(p, 20);
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(residual("m a_m = d_m + conv at " + tag,
                           d_a_check(as_series(a_from_t(t)), d_from_t(t)),
                           thr(opt, 1e-9)));
  }
  return out;
}

std::vector<CheckLine> suite_power_sum(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 2.0}}) {
    double worst = 0.0;
    for (int m : {4, 8, 12})
      worst = std::max(worst, power_sum_identity_check(p, m));
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(
        residual("moment identity m<=12 at " + tag, worst, thr(opt, 1e-10)));
  }
  return out;
}

std::vector<CheckLine> suite_egf_consistency(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  out.push_back(residual("EGF at (0.5,1), z0=0.05",
                         t_egf_check(Params{0.5, 1.0}, 25, 0.05),
                         thr(opt, 1e-11)));
  out.push_back(residual("EGF at (0.2,2), z0=0.1",
                         t_egf_check(Params{0.2, 2.0}, 30, 0.1),
                         thr(opt, 1e-11)));
  out.push_back(residual("EGF at (0.7,0.5), z0=0.015",
                         t_egf_check(Params{0.7, 0.5}, 25, 0.015),
                         thr(opt, 1e-11)));
  return out;
}

std::vector<CheckLine> suite_f_route(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 2.0}}) {
    const CoeffTable t = t_stirling_table(p, 20);
    const CoeffTable fr = f_ppe_recursive(t);
    const CoeffTable fd = f_from_divisors(d_from_t(t), 20);
    double gap = 0.0;
    for (int n = 1; n <= 20; ++n)
      gap = std::max(gap, rel_gap(fr.at(n), fd.at(n)));
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(
        residual("recursion vs divisor route, n<=20 " + tag, gap, thr(opt, 1e-9)));
  }
  {
    // Divisor route to n = 60, double lane against a full long double
    // recomputation on the same scaled grading.
    const Params p{0.5, 1.0};
    const int n_max = 60;
    const double scale = std::exp(-t_log_abs(p, n_max) / n_max);
    const CoeffTable f64 =
        f_from_divisors(d_from_t(t_stirling_table(p, n_max, scale)), n_max);
    std::vector<long double> tl(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
      tl[n] = detail::t_stirling_scaled(p, n, scale);
    const std::vector<long double> fl =
        kernels::f_from_divisors(kernels::d_from_t(tl));
    double gap = 0.0;
    for (int n = 1; n <= n_max; ++n)
      gap = std::max(gap, rel_gap(f64.scaled(n), static_cast<double>(fl[n])));
    out.push_back(
        residual("divisor route n<=60 vs long double", gap, thr(opt, 1e-6)));
  }
  return out;
}

std::vector<CheckLine> suite_bound_sandwich(const VerifyOptions& opt) {
  int sandwich_violations = 0;
  int sup_violations = 0;
  std::vector<int> sv(16, 0), pv(16, 0);
  parallel_for(16, pool(opt), [&](int cell) {
    const Params low{kAlphaGrid[cell % 4], kGammaSubOne[cell / 4]};
    const Params any{kAlphaGrid[cell % 4], kGammaGrid[cell / 4]};
    for (int n = 5; n <= 40; ++n) {
      const BoundReport b = bound_report(low, n);
      const double tn = std::abs(b.t_exact);
      if (!b.polylog_valid || tn > b.upper) ++pv[cell];
      if (!b.lower_vacuous && b.lower > tn) ++pv[cell];
      if (std::abs(bound_report(any, n).t_exact) >
          t_sup_bound(any, n) * (1.0 + 1e-12))
        ++sv[cell];
    }
  });
  for (int c = 0; c < 16; ++c) {
    sandwich_violations += pv[c];
    sup_violations += sv[c];
  }
  std::vector<CheckLine> out;
  out.push_back(structural("lower <= |t_n| <= upper, gamma<1 grid, n in [5,40]",
                           sandwich_violations == 0));
  out.push_back(structural("|t_n| <= sup bound, full grid, n in [5,40]",
                           sup_violations == 0));
  {
    const Params p{0.3, 0.5};
    bool monotone = true;
    double prev = 0.0;
    double last = 0.0;
    for (int n = 31; n <= 40; ++n) {
      const double ratio = t_upper_polylog(p, n) / std::abs(t_stirling(p, n));
      if (n > 31 && ratio > prev * (1.0 + 1e-12)) monotone = false;
      prev = ratio;
      last = ratio;
    }
    out.push_back(structural("upper/|t_n| decreasing over n in [31,40]", monotone));
    out.push_back(
        residual("upper/|t_n| - 1 at n=40, (0.3,0.5)", last - 1.0, thr(opt, 0.02)));
  }
  return out;
}

std::vector<CheckLine> suite_asymptotic_estimates(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  {
    const Params p{0.2, 2.0};
    const double r = t_estimate_steepest(p, 40) / t_stirling(p, 40);
    out.push_back(
        residual("steepest/exact - 1 at (0.2,2), n=40", std::abs(r - 1.0),
                 thr(opt, 0.05)));
  }
  {
    const Params p{0.5, 1.0};
    const double r = t_estimate_steepest(p, 30) / t_stirling(p, 30);
    out.push_back(
        residual("steepest/exact - 1 at (0.5,1), n=30", std::abs(r - 1.0),
                 thr(opt, 0.052)));
  }
  {
    const Params p{0.2, 2.0};
    const double r = t_estimate_simple(p, 40) / t_stirling(p, 40);
    out.push_back(residual("simple/exact - 1 at (0.2,2), n=40",
                           std::abs(r - 1.0), thr(opt, 0.06)));
  }
  {
    const Params p{0.3, 0.5};
    const double r = t_estimate_simple(p, 40) / t_stirling(p, 40);
    out.push_back(residual("simple/exact - 1 at (0.3,0.5), n=40",
                           std::abs(r - 1.0), thr(opt, 0.06)));
  }
  {
    const Params p{0.5, 1.0};
    const int n = 60;
    const double lr = t_log_abs(p, n) / n + 1.0 + std::log(p.gamma) +
                      std::log(p.log_inv_alpha()) - std::log(n);
    out.push_back(residual("n-th root growth vs e gamma L/n at n=60",
                           std::abs(std::expm1(lr)), thr(opt, 0.10)));
  }
  return out;
}

std::vector<CheckLine> suite_ratio_limits(const VerifyOptions& opt) {
  const Params p{0.3, 1.0};
  const auto rd = ratio_d_over_t(p, 90);
  const auto rf = ratio_f_over_t(p, 90);
  double wd = 0.0, wf = 0.0;
  std::vector<std::pair<int, double>> dev;
  for (const auto& [m, r] : rd) {
    if (m >= 40) wd = std::max(wd, std::abs(-r - 1.0));
    if (m >= 10) dev.emplace_back(m, std::abs(-r - 1.0));
  }
  for (const auto& [n, r] : rf)
    if (n >= 60) wf = std::max(wf, std::abs(r + 1.0));
  std::vector<CheckLine> out;
  out.push_back(residual("|-d_m/(m t_m) - 1|, m in [40,90]", wd, thr(opt, 0.05)));
  out.push_back(residual("|f_n/t_n + 1|, n in [60,90]", wf, thr(opt, 0.05)));
  const DecayFit fit = fit_decay(dev);
  out.push_back(residual("d-ratio deviation decay exponent vs -1",
                         std::abs(fit.exponent + 1.0), thr(opt, 0.35)));
  return out;
}

std::vector<CheckLine> suite_tree_count(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  out.push_back(residual("growth constant, 40 iterations",
                         rel_gap(tree_growth_constant(40), kTreeC),
                         thr(opt, 1e-12)));
  out.push_back(residual("12 iterations already 6-digit",
                         rel_gap(tree_growth_constant(12), kTreeC),
                         thr(opt, 1e-6)));
  out.push_back(
      residual("kappa = c^2/2", rel_gap(tree_kappa(), kTreeKappa), thr(opt, 1e-12)));
  return out;
}

std::vector<CheckLine> suite_loop_integral(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 0.5}}) {
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n)
      worst = std::max(worst, rel_gap(t_loop_integral(p, n), t_stirling(p, n)));
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(
        residual("contour integral vs exact, n<=8 " + tag, worst, thr(opt, 1e-10)));
  }
  return out;
}

std::vector<CheckLine> suite_gamma_products(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  const std::complex<double> zs[] = {{0.55, 0.0}, {-0.45, 0.0}, {0.3, 0.4}};
  for (int m : {2, 3, 4}) {
    double worst = 0.0;
    for (const auto& z : zs) {
      const GammaProductIdentity id = gamma_product_identity(m, z, 2000);
      worst = std::max(worst, std::abs(id.rhs - id.wan_rhs) / std::abs(id.wan_rhs));
    }
    out.push_back(residual("Gamma product vs zeta form, m=" + std::to_string(m),
                           worst, thr(opt, 1e-9)));
  }
  {
    const std::complex<double> z{0.3, 0.4};
    const GammaProductIdentity a = gamma_product_identity(2, z, 1000);
    const GammaProductIdentity b = gamma_product_identity(2, z, 2000);
    const double e1 = std::abs(a.lhs - a.wan_rhs);
    const double e2 = std::abs(b.lhs - b.wan_rhs);
    out.push_back(residual("direct product error halves when N doubles",
                           std::abs(e1 / e2 - 2.0), thr(opt, 0.4)));
  }
  return out;
}

std::vector<CheckLine> suite_ppe_gamma_product(const VerifyOptions& opt) {
  const Params p{0.5, 1.0};
  std::vector<CheckLine> out;
  out.push_back(residual("t=0 gives exactly 1",
                         std::abs(truncated_ppe_gamma_product(p, 1, 0.0) - 1.0),
                         thr(opt, 1e-14)));
  {
    const double f1 = f_closed(p, 1);
    const double t = 0.3;
    const double closed =
        gamma_fn(1.0 - t + f1) * rgamma(1.0 - t) * rgamma(1.0 + f1);
    out.push_back(residual("m=1 vs single Gamma ratio",
                           rel_gap(truncated_ppe_gamma_product(p, 1, t), closed),
                           thr(opt, 1e-12)));
  }
  for (const auto& [m, t] : {std::pair<int, double>{2, 0.4},
                             std::pair<int, double>{6, 0.2}}) {
    std::vector<double> f(m + 1);
    for (int k = 1; k <= m; ++k) f[k] = f_closed(p, k);
    Kahan<long double> lg;
    const long J = 10000;
    for (long j = 1; j <= J; ++j) {
      for (int k = 1; k <= m; ++k) {
        lg.add(std::log1p(f[k] * std::pow(static_cast<long double>(j), -k)));
        lg.add(-std::log1p(f[k] * std::pow(static_cast<long double>(j) - t, -k)));
      }
    }
    const double direct = static_cast<double>(std::exp(lg.value()));
    out.push_back(residual(
        "closed form vs direct product, m=" + std::to_string(m),
        rel_gap(truncated_ppe_gamma_product(p, m, t), direct), thr(opt, 2e-3)));
  }
  return out;
}

std::vector<CheckLine> suite_ppe_slope(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.3, 1.0}, Params{0.6, 2.0}}) {
    const std::vector<double> F = big_f_table(p, 400);
    double f[7];
    for (int k = 1; k <= 6; ++k) f[k] = f_closed(p, k);
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    for (int m = 1; m <= 5; ++m) {
      // Log-spaced j sample; the deviation is the next uncancelled PPE
      // factor, so its log-log slope is -(m+1).
      std::vector<double> lx, ly;
      for (double jr = 50.0; jr <= 400.5; jr *= 1.12) {
        const int j = static_cast<int>(jr + 0.5);
        long double prod = std::exp(p.gamma * std::log1p(-p.alpha));
        for (int k = 1; k <= m; ++k)
          prod *= 1.0L + f[k] * std::pow(static_cast<long double>(j), -k);
        const double dev = std::abs(static_cast<double>(prod * F[j - 1] - 1.0L));
        if (dev == 0.0) continue;
        lx.push_back(std::log(static_cast<double>(j)));
        ly.push_back(std::log(dev));
      }
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
      }
      const double n = static_cast<double>(lx.size());
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      out.push_back(residual(
          "slope vs -(m+1), m=" + std::to_string(m) + " " + tag,
          std::abs(slope + (m + 1.0)), thr(opt, 0.2)));
    }
  }
  return out;
}

std::vector<CheckLine> suite_big_f(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 2.0}}) {
    const std::vector<double> F = big_f_table(p, 40);
    bool monotone = true, bounded = true;
    const double cap = std::exp(-p.gamma * std::log1p(-p.alpha));
    for (int j = 0; j < 40; ++j) {
      if (j > 0 && F[j] <= F[j - 1]) monotone = false;
      if (F[j] >= cap) bounded = false;
    }
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(structural("F_j increasing " + tag, monotone));
    out.push_back(structural("F_j < (1-alpha)^-gamma " + tag, bounded));
    out.push_back(residual(
        "F_1 vs 2F1(gamma,gamma;1+gamma;alpha) " + tag,
        rel_gap(F[0], gauss_2f1(p.gamma, p.gamma, 1.0 + p.gamma, p.alpha)),
        thr(opt, 1e-12)));
    double table_gap = 0.0;
    for (int j : {1, 7, 40})
      table_gap = std::max(table_gap, rel_gap(F[j - 1], big_f(p, j)));
    out.push_back(residual("table vs single-value route " + tag, table_gap,
                           thr(opt, 1e-13)));
    const std::complex<double> fc = big_f(p, std::complex<double>(2.5, 0.0));
    out.push_back(residual("complex overload at real j " + tag,
                           std::abs(fc - big_f(p, 2.5)), thr(opt, 1e-13)));
  }
  return out;
}

std::vector<CheckLine> suite_g_product_asymptotic(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 2.0}}) {
    const std::vector<double> F = big_f_table(p, 1000);
    Kahan<double> ln_s;
    double at500 = 0.0, at1000 = 0.0;
    for (int k = 1; k <= 1000; ++k) {
      ln_s.add(p.gamma * std::log1p(-p.alpha) + std::log(F[k - 1]));
      if (k == 500) at500 = ln_s.value();
      if (k == 1000) at1000 = ln_s.value();
    }
    const double shift = 1.0 + 1.0 / p.gamma;
    const double slope =
        (at1000 - at500) / (std::log(1000.0 + shift) - std::log(500.0 + shift));
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 3) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(residual("product decay exponent vs -alpha/(1-alpha) " + tag,
                           std::abs(slope + p.alpha / (1.0 - p.alpha)),
                           thr(opt, 0.05)));
  }
  return out;
}

std::vector<CheckLine> suite_g_interpolation(const VerifyOptions& opt) {
  const Params p{0.5, 1.0};
  std::vector<CheckLine> out;
  for (int k : {1, 2, 3}) {
    const double gi = g_interpolated(p, -static_cast<double>(k), 20000);
    out.push_back(residual("G(-" + std::to_string(k) + ") vs 1/prod F",
                           rel_gap(gi, g_k(p, k)), thr(opt, 1e-8)));
  }
  out.push_back(residual("G(0) = 1", std::abs(g_interpolated(p, 0.0, 1000) - 1.0),
                         thr(opt, 1e-14)));
  {
    const std::complex<double> gc =
        g_interpolated(p, std::complex<double>(-1.0, 0.0), 2000);
    out.push_back(residual("complex overload at real t",
                           std::abs(gc - g_interpolated(p, -1.0, 2000)),
                           thr(opt, 1e-10)));
  }
  return out;
}

std::vector<CheckLine> suite_mellin_transform(const VerifyOptions& opt) {
  const Params p{0.5, 1.0};
  std::vector<CheckLine> out;
  out.push_back(residual("H(1) = 1",
                         std::abs(mellin_transform(p, 1.0, 1000) - 1.0),
                         thr(opt, 1e-10)));
  out.push_back(residual(
      "H(1-gamma) F_1 = 1",
      std::abs(mellin_transform(p, 1.0 - p.gamma, 1000) * big_f(p, 1.0) - 1.0),
      thr(opt, 1e-5)));
  for (double s : {0.2, 0.5, 0.8})
    out.push_back(residual(
        "functional equation residual at s=" + std::to_string(s).substr(0, 3),
        mellin_functional_residual(p, s, 1000), thr(opt, 1e-5)));
  out.push_back(residual("functional residual at (0.3,2), s=0.5",
                         mellin_functional_residual(Params{0.3, 2.0}, 0.5, 1000),
                         thr(opt, 1e-5)));
  return out;
}

std::vector<CheckLine> suite_simon_constant(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  out.push_back(residual("c(0, gamma) = gamma",
                         rel_gap(simon_constant(Params{0.0, 2.0}, 64).exact_c, 2.0),
                         thr(opt, 1e-12)));
  {
    const Params p{0.5, 1.0};
    const double c2k = simon_constant(p, 2000).exact_c;
    const double c4k = simon_constant(p, 4000).exact_c;
    out.push_back(
        residual("K=2000 vs K=4000 agreement", rel_gap(c2k, c4k), thr(opt, 1e-5)));
  }
  {
    double worst = 0.0;
    for (double gamma : kGammaGrid) {
      const ConstantReport r = simon_constant(Params{0.02, gamma}, 2000);
      worst = std::max(worst, std::abs(r.first_order_c / r.exact_c - 1.0));
    }
    out.push_back(
        residual("first order within 5% at alpha=0.02", worst, thr(opt, 0.05)));
  }
  {
    std::vector<int> bad(4, 0);
    std::vector<double> end(4, 0.0);
    parallel_for(4, pool(opt), [&](int gi) {
      const double gamma = kGammaGrid[gi];
      for (int ai = 0; ai <= 19; ++ai) {
        const double alpha = 0.05 * ai;
        const double c = simon_constant(Params{alpha, gamma}, 2000).exact_c;
        if (!(std::isfinite(c) && c > 0.0)) ++bad[gi];
        if (ai == 19) end[gi] = c;
      }
    });
    out.push_back(structural("finite positive over the trend grid",
                             bad[0] + bad[1] + bad[2] + bad[3] == 0));
    out.push_back(structural("gamma=0.5 heads toward 0 at alpha=0.95",
                             end[0] < 0.25));
    out.push_back(structural("gamma>=1 heads toward infinity at alpha=0.95",
                             end[1] > 2.0 && end[2] > 4.0 && end[3] > 8.0));
  }
  return out;
}

std::vector<CheckLine> suite_first_order_density(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const Params& p : {Params{0.5, 1.0}, Params{0.3, 2.0}, Params{0.05, 0.5}}) {
    const double rho = 1.0 / (1.0 - p.alpha);
    const double y_hi = 1e-8;
    const double u_lo = std::log(x_of_y(p, 60.0));
    const double u_hi = std::log(x_of_y(p, y_hi));
    const double body = simpson(
        [&](double u) {
          const double x = std::exp(u);
          return density_first_order(p, x) * x;
        },
        u_lo, u_hi, 4000);
    // Mass above the cut is the y < y_hi Gamma tail; below the cut it is
    // the y > 60 tail, under 1e-20 for every rho on the grid.
    const double tail =
        std::exp(rho * std::log(y_hi) - log_gamma(rho + 1.0)) *
        (1.0 - rho * y_hi / (rho + 1.0));
    const std::string tag = "(" + std::to_string(p.alpha).substr(0, 4) + "," +
                            std::to_string(p.gamma).substr(0, 3) + ")";
    out.push_back(residual("integral vs 1 at " + tag,
                           std::abs(body + tail - 1.0), thr(opt, 1e-8)));
  }
  out.push_back(residual(
      "Frechet value at alpha=0, x=1",
      rel_gap(density_first_order(Params{0.0, 1.0}, 1.0), std::exp(-1.0)),
      thr(opt, 1e-14)));
  {
    const Params p{0.5, 1.0};
    out.push_back(residual("(0.5,1) value at x=1 vs 4 e^-2",
                           rel_gap(density_first_order(p, 1.0), 4.0 * std::exp(-2.0)),
                           thr(opt, 1e-13)));
    const double x = 2.0;
    const double rho = 2.0;
    const double shape =
        std::pow(x, -1.0 - p.gamma * rho) * std::exp(-y_of_x(p, x));
    out.push_back(residual(
        "prefactor matches first_order_constant",
        rel_gap(density_first_order(p, x) / shape, first_order_constant(p)),
        thr(opt, 1e-13)));
  }
  return out;
}

std::vector<CheckLine> suite_second_order_density(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  {
    const Params p{0.3, 2.0};
    const double beta = std::sqrt(p.alpha / p.gamma) / (1.0 - p.alpha);
    const double u_lo = std::log(x_of_y(p, 35.0));
    const double u_hi = std::log(x_of_y(p, 1e-6));
    const double body = simpson(
        [&](double u) {
          const double x = std::exp(u);
          return density_second_order(p, x) * x;
        },
        u_lo, u_hi, 1500);
    // Past the cut the slowest term x^{-1-gamma(1-beta)} owns the tail;
    // the faster exponents are down by y^{rho-1+beta} ~ 1e-6 there. The
    // dropped y > 35 end is a 2e-14 Gamma tail.
    const double x_hi = std::exp(u_hi);
    const double tail = density_second_order(p, x_hi) * x_hi /
                        (p.gamma * (1.0 - beta));
    out.push_back(residual("integral vs 1 at (0.3,2)",
                           std::abs(body + tail - 1.0), thr(opt, 0.02)));
  }
  {
    const Params p{1e-4, 1.0};
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0, 5.0})
      worst = std::max(worst, std::abs(density_second_order(p, x) /
                                           density_first_order(p, x) -
                                       1.0));
    out.push_back(
        residual("collapses to first order at alpha=1e-4", worst, thr(opt, 1e-3)));
  }
  {
    const Params p{0.05, 2.0};
    for (double y : {30.0, 50.0}) {
      const double x = x_of_y(p, y);
      const double r =
          density_second_order(p, x) / density_smallx_second(p, x) - 1.0;
      out.push_back(residual(
          "small-x ratio at y=" + std::to_string(static_cast<int>(y)) +
              ", (0.05,2)",
          std::abs(r), thr(opt, 1e-3)));
    }
  }
  {
    const Params p{0.5, 1.0};
    const double rho = 2.0;
    double lo = 1e300, hi = 0.0;
    for (double x : {0.1, 0.5, 2.0}) {
      const double c = density_smallx_second(p, x) *
                       std::pow(x, 1.0 + p.gamma * rho) *
                       std::exp(y_of_x(p, x));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    out.push_back(residual("small-x constant is x-independent",
                           (hi - lo) / hi, thr(opt, 1e-12)));
    const double beta = std::sqrt(2.0);
    const double expect = first_order_constant(p) * rgamma(1.0 + beta) *
                          rgamma(1.0 - beta);
    const double got = density_smallx_second(p, 0.7) *
                       std::pow(0.7, 1.0 + p.gamma * rho) *
                       std::exp(y_of_x(p, 0.7));
    out.push_back(residual("small-x constant at (0.5,1) vs Gamma(1+-sqrt2) form",
                           rel_gap(got, expect), thr(opt, 1e-12)));
    out.push_back(residual("second_order_constant matches the small-x form",
                           rel_gap(got, second_order_constant(p)),
                           thr(opt, 1e-12)));
  }
  return out;
}

std::vector<CheckLine> suite_mellin_barnes(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  out.push_back(residual(
      "alpha=0, gamma=1, x=1 vs e^-1",
      rel_gap(density_mellin_barnes(Params{0.0, 1.0}, 1.0), std::exp(-1.0)),
      thr(opt, 1e-4)));
  const Params p{0.05, 1.0};
  {
    const std::vector<double> xs = {0.45, 1.0, 2.0, 4.0};
    const DensityCurve mb = density_curve(p, DensityOrder::MellinBarnesOracle, xs);
    double worst = 0.0;
    for (const auto& [x, h] : mb.samples)
      worst = std::max(worst, std::abs(h / density_first_order(p, x) - 1.0));
    out.push_back(structural("curve keeps every in-band point",
                             mb.samples.size() == xs.size()));
    out.push_back(
        residual("ratio to first order across the band", worst, thr(opt, 0.02)));
  }
  {
    // Band integral with first-order tails glued on both sides.
    const double margin = 1.0 + 1e-9;
    const double x_lo = 0.2 / (1.0 - p.alpha) * margin;
    const double x_hi = 5.0 / (1.0 - p.alpha) / margin;
    const int panels = 256;
    std::vector<double> xs(2 * panels + 1);
    const double u_lo = std::log(x_lo), u_hi = std::log(x_hi);
    for (int i = 0; i <= 2 * panels; ++i)
      xs[i] = std::exp(u_lo + (u_hi - u_lo) * i / (2.0 * panels));
    const DensityCurve mb = density_curve(p, DensityOrder::MellinBarnesOracle, xs);
    double band = 0.0;
    if (mb.samples.size() == xs.size()) {
      Kahan<double> s;
      const double h = (u_hi - u_lo) / (2.0 * panels);
      for (int i = 0; i <= 2 * panels; ++i) {
        const double w = (i == 0 || i == 2 * panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s.add(w * mb.samples[i].second * mb.samples[i].first);
      }
      band = s.value() * h / 3.0;
    }
    const double below = simpson(
        [&](double u) {
          const double x = std::exp(u);
          return density_first_order(p, x) * x;
        },
        std::log(x_of_y(p, 40.0)), u_lo, 1000);
    const double rho = 1.0 / (1.0 - p.alpha);
    const double y_end = 1e-8;
    const double above = simpson(
                             [&](double u) {
                               const double x = std::exp(u);
                               return density_first_order(p, x) * x;
                             },
                             u_hi, std::log(x_of_y(p, y_end)), 1000) +
                         std::exp(rho * std::log(y_end) - log_gamma(rho + 1.0));
    out.push_back(residual("band + tail integral vs 1",
                           std::abs(band + below + above - 1.0), thr(opt, 0.01)));
  }
  return out;
}

using SuiteFn = std::vector<CheckLine> (*)(const VerifyOptions&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"specfun-basics", suite_specfun_basics},
    {"t-cross-method", suite_t_cross_method},
    {"closed-polynomials", suite_closed_polynomials},
    {"sign-pattern", suite_sign_pattern},
    {"series-reflexivity", suite_series_reflexivity},
    {"unified-relation", suite_unified_relation},
    {"d-a-relation", suite_d_a_relation},
    {"power-sum", suite_power_sum},
    {"egf-consistency", suite_egf_consistency},
    {"f-route", suite_f_route},
    {"bound-sandwich", suite_bound_sandwich},
    {"asymptotic-estimates", suite_asymptotic_estimates},
    {"ratio-limits", suite_ratio_limits},
    {"tree-count", suite_tree_count},
    {"loop-integral", suite_loop_integral},
    {"gamma-products", suite_gamma_products},
    {"ppe-gamma-product", suite_ppe_gamma_product},
    {"ppe-slope", suite_ppe_slope},
    {"big-f", suite_big_f},
    {"g-product-asymptotic", suite_g_product_asymptotic},
    {"g-interpolation", suite_g_interpolation},
    {"mellin-transform", suite_mellin_transform},
    {"simon-constant", suite_simon_constant},
    {"first-order-density", suite_first_order_density},
    {"second-order-density", suite_second_order_density},
    {"mellin-barnes", suite_mellin_barnes},
};

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : kSuites) names.emplace_back(s.name);
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
  const SuiteEntry* entry = nullptr;
  for (const auto& s : kSuites)
    if (name == s.name) entry = &s;
  if (!entry) throw DomainError("unknown verify suite: " + name);
  SuiteResult result;
  result.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    result.checks = entry->fn(opt);
    result.passed = !result.checks.empty();
    for (const auto& c : result.checks) result.passed = result.passed && c.passed;
  } catch (const std::exception& e) {
    result.passed = false;
    result.error = e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const VerifyOptions& opt) {
  std::vector<std::string> selected = names;
  if (selected.empty()) selected = suite_names();
  std::vector<SuiteResult> results;
  results.reserve(selected.size());
  for (const auto& name : selected) results.push_back(run_suite(name, opt));
  return results;
}

}  // namespace alphasun
