#include "alphasun/bounds.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "alphasun/errors.hpp"
#include "alphasun/kahan.hpp"
#include "alphasun/sequences.hpp"
#include "alphasun/specfun.hpp"

namespace alphasun {

namespace {

void require_polylog_domain(const Params& p) {
  if (p.gamma >= 1.0)
    throw DomainError("polylog bounds require gamma < 1");
  if (p.alpha <= 0.0)
    throw DomainError("polylog bounds require alpha > 0");
}

double polylog_bound_prefactor(const Params& p, int n) {
  // (1-alpha)^gamma gamma^{-n} / Gamma(gamma), gamma in (0,1) so the
  // reciprocal is pole-free.
  return std::exp(p.gamma * std::log1p(-p.alpha) - n * std::log(p.gamma)) *
         rgamma(p.gamma);
}

// Root of g(r) = r + ln(alpha) + ln(nu + gamma r) - ln(nu), the saddle of
// the coefficient integral with nu = n (supremum bound) or nu = n+1
// (steepest descent). Equivalent to r + nu/gamma = W0((nu/(alpha gamma))
// e^{nu/gamma}); the W0 route is used while its argument is representable
// and a safeguarded Newton iteration on g takes over past that. The root
// is bracketed by nu L/(nu+gamma) < r < L with L = ln(1/alpha).
double saddle(const Params& p, double nu) {
  if (p.alpha <= 0.0)
    throw DomainError("saddle point requires alpha > 0");
  const double lg_arg = std::log(nu / (p.alpha * p.gamma)) + nu / p.gamma;
  if (lg_arg < 700.0)
    return lambert_w0((nu / (p.alpha * p.gamma)) * std::exp(nu / p.gamma)) -
           nu / p.gamma;

  const double big_l = p.log_inv_alpha();
  double lo = nu * big_l / (nu + p.gamma);
  double hi = big_l;
  double r = 0.5 * (lo + hi);
  const double log_alpha = std::log(p.alpha);
  for (int it = 0; it < 100; ++it) {
    const double g = r + log_alpha + std::log1p(p.gamma * r / nu);
    if (g > 0.0)
      hi = r;
    else
      lo = r;
    const double gp = 1.0 + p.gamma / (nu + p.gamma * r);
    double next = r - g / gp;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-15 * (1.0 + std::abs(r))) return next;
    r = next;
  }
  throw NonConvergence("saddle point iteration stalled");
}

}  // namespace

double t_upper_polylog(const Params& p, int n) {
  require_polylog_domain(p);
  if (n < 0) throw DomainError("t_upper_polylog requires n >= 0");
  return polylog_bound_prefactor(p, n) * polylog(1.0 - n - p.gamma, p.alpha);
}

double t_lower_polylog(const Params& p, int n) {
  require_polylog_domain(p);
  if (n < 0) throw DomainError("t_lower_polylog requires n >= 0");
  const double bracket = polylog(1.0 - n - p.gamma, p.alpha) -
                         (1.0 - p.gamma) * polylog(2.0 - n - p.gamma, p.alpha);
  return polylog_bound_prefactor(p, n) * bracket;
}

double saddle_r0(const Params& p, int n) {
  if (n < 1) throw DomainError("saddle_r0 requires n >= 1");
  return saddle(p, static_cast<double>(n));
}

double t_sup_bound_log(const Params& p, int n) {
  if (n < 1) throw DomainError("t_sup_bound requires n >= 1");
  const double r0 = saddle_r0(p, n);
  return p.gamma * std::log1p(-p.alpha) + log_gamma(n + 1.0) -
         (n + p.gamma) * std::log(p.gamma * r0) +
         p.gamma * std::log(n + p.gamma * r0);
}

double t_sup_bound(const Params& p, int n) {
  return std::exp(t_sup_bound_log(p, n));
}

double saddle_z0(const Params& p, int n) {
  if (n < 0) throw DomainError("saddle_z0 requires n >= 0");
  return saddle(p, n + 1.0);
}

double t_estimate_steepest_log(const Params& p, int n) {
  if (n < 1) throw DomainError("t_estimate_steepest requires n >= 1");
  const double z0 = saddle_z0(p, n);
  const double shifted = z0 + (n + 1.0) / p.gamma;
  return p.gamma * std::log1p(-p.alpha) -
         0.5 * std::log(2.0 * std::numbers::pi) + log_gamma(n + 1.0) -
         n * std::log(p.gamma) - 0.5 * std::log(n + 1.0) -
         (n + p.gamma) * std::log(z0) + p.gamma * std::log(shifted) -
         0.5 * std::log(shifted + 1.0);
}

double t_estimate_steepest(const Params& p, int n) {
  return t_sign(n) * std::exp(t_estimate_steepest_log(p, n));
}

double t_estimate_simple_log(const Params& p, int n) {
  if (n < 1) throw DomainError("t_estimate_simple requires n >= 1");
  const double big_l = p.log_inv_alpha();
  return p.gamma * std::log1p(-p.alpha) + log_pochhammer(p.gamma, n) -
         n * std::log(p.gamma) - (n + p.gamma) * std::log(big_l);
}

double t_estimate_simple(const Params& p, int n) {
  return t_sign(n) * std::exp(t_estimate_simple_log(p, n));
}

BoundReport bound_report(const Params& p, int n) {
  BoundReport rep;
  rep.n = n;
  rep.t_exact = t_stirling(p, n);
  rep.polylog_valid = p.gamma < 1.0 && p.alpha > 0.0;
  if (rep.polylog_valid && n >= 0) {
    rep.lower = t_lower_polylog(p, n);
    rep.upper = t_upper_polylog(p, n);
    rep.lower_vacuous = !(rep.lower > 0.0);
  }
  if (n >= 1 && p.alpha > 0.0) {
    rep.sup_bound = t_sup_bound(p, n);
    rep.estimate_steepest = t_estimate_steepest(p, n);
    rep.estimate_simple = t_estimate_simple(p, n);
  }
  return rep;
}

std::vector<std::pair<int, double>> ratio_d_over_t(const Params& p,
                                                   int m_max) {
  if (m_max < 1 || m_max > 200)
    throw DomainError("ratio_d_over_t requires 1 <= m_max <= 200");
  if (p.alpha <= 0.0)
    throw DomainError("ratio sequences need alpha > 0");
  const double scale = std::exp(-t_log_abs(p, m_max) / m_max);
  const CoeffTable t = t_stirling_table(p, m_max, scale);
  const CoeffTable d = d_from_t(t);
  std::vector<std::pair<int, double>> out;
  out.reserve(m_max);
  for (int m = 1; m <= m_max; ++m)
    out.emplace_back(m, -d.scaled(m) / (m * t.scaled(m)));
  return out;
}

std::vector<std::pair<int, double>> ratio_f_over_t(const Params& p,
                                                   int n_max) {
  if (n_max < 1 || n_max > 200)
    throw DomainError("ratio_f_over_t requires 1 <= n_max <= 200");
  if (p.alpha <= 0.0)
    throw DomainError("ratio sequences need alpha > 0");
  const double scale = std::exp(-t_log_abs(p, n_max) / n_max);
  const CoeffTable t = t_stirling_table(p, n_max, scale);
  const CoeffTable f = f_from_divisors(d_from_t(t), n_max);
  std::vector<std::pair<int, double>> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n)
    out.emplace_back(n, f.scaled(n) / t.scaled(n));
  return out;
}

DecayFit fit_decay(const std::vector<std::pair<int, double>>& deviations) {
  if (deviations.empty()) throw DomainError("fit_decay on empty sequence");
  const int m_top = deviations.back().first;
  Kahan<double> sx, sy, sxx, sxy;
  long count = 0;
  for (const auto& [m, dev] : deviations) {
    if (2 * m < m_top || dev == 0.0) continue;
    const double x = std::log(static_cast<double>(m));
    const double y = std::log(std::abs(dev));
    sx.add(x);
    sy.add(y);
    sxx.add(x * x);
    sxy.add(x * y);
    ++count;
  }
  if (count < 2) throw DomainError("fit_decay needs two usable points");
  const double det = count * sxx.value() - sx.value() * sx.value();
  DecayFit fit;
  fit.exponent = (count * sxy.value() - sx.value() * sy.value()) / det;
  fit.amplitude =
      std::exp((sy.value() - fit.exponent * sx.value()) / count);
  return fit;
}

double tree_growth_constant(int n_iters) {
  if (n_iters < 1) throw DomainError("tree_growth_constant needs n >= 1");
  // lambda_k = ln x_k for x_k = 1 + x_{k-1}^2; exp(-2 lambda) underflows
  // quickly, after which the recursion is exact doubling.
  long double lambda = 0.0L;
  for (int k = 2; k <= n_iters; ++k)
    lambda = 2.0L * lambda + std::log1p(std::exp(-2.0L * lambda));
  return static_cast<double>(std::exp(std::ldexp(lambda, -n_iters)));
}

double tree_kappa() {
  const double c = tree_growth_constant(40);
  return 0.5 * c * c;
}

double t_loop_integral(const Params& p, int n) {
  if (n < 0 || n > 8)
    throw DomainError("t_loop_integral is a cross-check for n <= 8");
  if (p.alpha <= 0.0)
    throw DomainError("t_loop_integral requires alpha > 0");
  const double r = 0.5 * p.log_inv_alpha();
  // |alpha e^z| <= sqrt(alpha) < 1 on the contour, so 1 - alpha e^z stays
  // clear of the branch cut and the principal power is the right one.
  constexpr int kNodes = 1 << 12;
  Kahan<long double> acc;
  for (int j = 0; j < kNodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / kNodes;
    const std::complex<double> z = std::polar(r, theta);
    const std::complex<double> w =
        std::pow(1.0 - p.alpha * std::exp(z), std::complex<double>(-p.gamma));
    acc.add(static_cast<long double>(
        (w * std::polar(1.0, -n * theta)).real()));
  }
  const double mean = static_cast<double>(acc.value()) / kNodes;
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return t_sign(n) * std::exp(p.gamma * std::log1p(-p.alpha)) *
         std::pow(p.gamma * r, -n) * fact * mean;
}

}  // namespace alphasun
