#include "alphasun/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alphasun/errors.hpp"
#include "alphasun/kahan.hpp"
#include "alphasun/sequences.hpp"
#include "alphasun/specfun.hpp"

namespace alphasun {

namespace {

constexpr double kPoleTol = 1e-12;

bool nonpositive_integer(double x) {
  const double r = std::rint(x);
  return r <= 0.0 && std::abs(x - r) <= kPoleTol;
}

// sin(pi x) with the integer part peeled off, so the sign is exact.
double sinpi_peeled(double x) {
  const double n = std::rint(x);
  const double r = x - n;
  const double s = std::sin(std::numbers::pi * r);
  return static_cast<long>(n) % 2 == 0 ? s : -s;
}

struct SignedLog {
  double log = 0.0;
  int sign = 1;
};

SignedLog signed_log_gamma(double x) {
  if (x >= 0.5) return {log_gamma(x), 1};
  if (nonpositive_integer(x)) throw PoleError("Gamma pole at " + std::to_string(x));
  const double s = sinpi_peeled(x);
  SignedLog out;
  out.log = std::log(std::numbers::pi) - std::log(std::abs(s)) - log_gamma(1.0 - x);
  out.sign = s < 0.0 ? -1 : 1;
  return out;
}

// Distance of u and v on the circle R/Z; the pole ladders collide when
// the fractional parts meet.
double circular_distance(double u, double v) {
  double d = std::abs(u - v);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

double geometric_guard(const Params& p, long l) {
  return p.alpha * (p.gamma + l) / (l + 1.0);
}

}  // namespace

double GammaRatioSpec::evaluate() const {
  for (double b : denominator_args)
    if (nonpositive_integer(b)) return 0.0;
  double lg = 0.0;
  int sign = 1;
  for (double a : numerator_args) {
    const SignedLog s = signed_log_gamma(a);
    lg += s.log;
    sign *= s.sign;
  }
  for (double b : denominator_args) {
    const SignedLog s = signed_log_gamma(b);
    lg -= s.log;
    sign *= s.sign;
  }
  return sign * std::exp(lg);
}

namespace {

template <typename T>
T big_f_impl(const Params& p, T j, const Precision& prec) {
  if (!(std::real(j) > 0.0))
    throw DomainError("big_f needs Re j > 0");
  prec.validate();
  Kahan<T> acc;
  double coeff = 1.0;
  for (long l = 0; l < prec.max_terms; ++l) {
    acc.add(coeff * (j / (j + l / p.gamma)));
    coeff *= p.alpha * (p.gamma + l) / (l + 1.0);
    if (l > 10 && coeff < prec.rel_tol * 0.1) return acc.value();
  }
  throw NonConvergence("big_f series exceeded max_terms");
}

}  // namespace

double big_f(const Params& p, double j, const Precision& prec) {
  return big_f_impl<double>(p, j, prec);
}

std::complex<double> big_f(const Params& p, std::complex<double> j,
                           const Precision& prec) {
  return big_f_impl<std::complex<double>>(p, j, prec);
}

std::vector<double> big_f_table(const Params& p, int k_max,
                                const Precision& prec) {
  if (k_max < 1) throw DomainError("big_f_table needs k_max >= 1");
  prec.validate();
  std::vector<Kahan<double>> acc(k_max);
  double coeff = 1.0;
  for (long l = 0; l < prec.max_terms; ++l) {
    const double shift = l / p.gamma;
    for (int k = 1; k <= k_max; ++k) acc[k - 1].add(coeff * k / (k + shift));
    coeff *= p.alpha * (p.gamma + l) / (l + 1.0);
    if (l > 10 && coeff < prec.rel_tol * 0.1) {
      std::vector<double> out(k_max);
      for (int k = 0; k < k_max; ++k) out[k] = acc[k].value();
      return out;
    }
  }
  throw NonConvergence("big_f_table series exceeded max_terms");
}

double g_k(const Params& p, int k, const Precision& prec) {
  if (k < 0) throw DomainError("g_k needs k >= 0");
  if (k == 0) return 1.0;
  const std::vector<double> f = big_f_table(p, k, prec);
  Kahan<double> lg;
  for (double v : f) lg.add(std::log(v));
  return std::exp(-lg.value());
}

namespace {

// Shared core of the off-integer G interpolation. The per-factor logs
// ln(F_{j-t}/F_j) decay like 1/j^2, so the remainder past J is A/J with
// A the mean of j^2 ln(F_{j-t}/F_j) over the last decade. The halving
// comparison reuses the same factor list.
template <typename T>
T g_interp_impl(const Params& p, T t, long J, const Precision& prec) {
  if (!(std::real(t) < 1.0))
    throw DomainError("g_interpolated needs Re t < 1");
  if (J < 40 || J > 2000000)
    throw DomainError("g_interpolated needs 40 <= J <= 2e6");
  const std::vector<double> f_int =
      big_f_table(p, static_cast<int>(J), prec);
  std::vector<T> lf(J);
  for (long j = 1; j <= J; ++j) {
    const T ratio = big_f_impl<T>(p, T(static_cast<double>(j)) - t, prec) /
                    f_int[j - 1];
    lf[j - 1] = std::log(ratio);
  }
  const double lead = -p.gamma * std::log1p(-p.alpha);
  auto value_at = [&](long limit) {
    Kahan<T> sum;
    for (long j = 0; j < limit; ++j) sum.add(lf[j]);
    Kahan<T> tail;
    long count = 0;
    for (long j = static_cast<long>(0.9 * limit) + 1; j <= limit; ++j) {
      tail.add(static_cast<double>(j) * static_cast<double>(j) * lf[j - 1]);
      ++count;
    }
    const T correction = tail.value() / (static_cast<double>(count) * limit);
    return std::exp(t * lead + sum.value() + correction);
  };
  const T full = value_at(J);
  const T half = value_at(J / 2);
  if (std::abs(full - half) > 1e-4 * std::abs(full))
    throw NonConvergence("g_interpolated tail not settled at this J");
  return full;
}

}  // namespace

double g_interpolated(const Params& p, double t, long truncation_J,
                      const Precision& prec) {
  return g_interp_impl<double>(p, t, truncation_J, prec);
}

std::complex<double> g_interpolated(const Params& p, std::complex<double> t,
                                    long truncation_J,
                                    const Precision& prec) {
  return g_interp_impl<std::complex<double>>(p, t, truncation_J, prec);
}

double mellin_transform(const Params& p, double s, long truncation_J,
                        const Precision& prec) {
  if (!(s < 1.0 + p.gamma))
    throw DomainError("mellin_transform needs s < 1 + gamma");
  return gamma_fn((1.0 + p.gamma - s) / p.gamma) *
         g_interpolated(p, (s - 1.0) / p.gamma, truncation_J, prec);
}

double mellin_functional_residual(const Params& p, double s, long truncation_J,
                                  const Precision& prec) {
  const double h_s = mellin_transform(p, s, truncation_J, prec);
  const double h_shift = mellin_transform(p, s - p.gamma, truncation_J, prec);
  const double rhs =
      p.gamma / (1.0 + p.gamma - s) *
      gauss_2f1(p.gamma, 1.0 + p.gamma - s, 2.0 + p.gamma - s, p.alpha, prec) *
      h_shift;
  return std::abs(h_s - rhs) / std::abs(h_s);
}

double first_order_constant(const Params& p) {
  const double rho = 1.0 / (1.0 - p.alpha);
  return std::exp(std::log(p.gamma) - p.gamma * rho * std::log1p(-p.alpha) -
                  log_gamma(rho));
}

double second_order_constant(const Params& p) {
  const double beta = std::sqrt(p.alpha / p.gamma) / (1.0 - p.alpha);
  // rgamma vanishes where 1-beta is a nonpositive integer; the constant
  // then changes sign through zero, which is the continuous limit.
  return first_order_constant(p) * rgamma(1.0 + beta) * rgamma(1.0 - beta);
}

ConstantReport simon_constant(const Params& p, long K, const Precision& prec) {
  if (K < 8) throw DomainError("simon_constant needs K >= 8");
  const std::vector<double> f = big_f_table(p, static_cast<int>(K), prec);
  const double lg1ma = std::log1p(-p.alpha);
  // Factor k of the product, in logs:
  //   alpha/((alpha-1)k) - log 2F1(1,gamma;1+k gamma;alpha/(alpha-1))
  // with the hypergeometric pulled back to argument alpha, where it is
  // (1-alpha)^gamma F_k. Each log-factor is O(1/k^2); two Richardson
  // steps on partial sums at K/4, K/2, K strip the 1/K and 1/K^2 tails.
  Kahan<double> sum;
  double s_quarter = 0.0, s_half = 0.0;
  for (long k = 1; k <= K; ++k) {
    sum.add(-p.alpha / ((1.0 - p.alpha) * k) - p.gamma * lg1ma -
            std::log(f[k - 1]));
    if (k == K / 4) s_quarter = sum.value();
    if (k == K / 2) s_half = sum.value();
  }
  const double s_full = sum.value();
  const double r1 = 2.0 * s_full - s_half;
  const double r2 = 2.0 * s_half - s_quarter;
  if (std::abs(r1 - r2) > 1e-3 * (1.0 + std::abs(r1)))
    throw NonConvergence("simon_constant tail extrapolation unstable");
  const double extrapolated = (4.0 * r1 - r2) / 3.0;

  ConstantReport rep;
  rep.truncation_K = K;
  rep.tail_correction = extrapolated - s_full;
  rep.exact_c = std::exp(std::log(p.gamma) -
                         p.gamma / (1.0 - p.alpha) * lg1ma +
                         p.alpha * std::numbers::egamma / (1.0 - p.alpha) +
                         extrapolated);
  rep.first_order_c = first_order_constant(p);
  rep.second_order_c = second_order_constant(p);
  return rep;
}

GammaProductIdentity gamma_product_identity(int m, std::complex<double> z,
                                            long N) {
  if (m < 2) throw DomainError("gamma_product_identity needs m >= 2");
  if (N < 10) throw DomainError("gamma_product_identity needs N >= 10");
  if (!(std::abs(z) < 1.0))
    throw DomainError("gamma_product_identity needs |z| < 1");
  GammaProductIdentity out;

  const std::complex<double> zm = std::pow(z, m);
  std::complex<double> lhs = 1.0;
  for (long n = 1; n <= N; ++n) {
    const double nm = std::pow(static_cast<double>(n), m);
    lhs *= nm / (nm - zm);
  }
  out.lhs = lhs;

  std::complex<double> rhs = 1.0;
  for (int j = 0; j < m; ++j) {
    const double phase = 2.0 * std::numbers::pi * j / m;
    rhs *= gamma_fn(1.0 - std::polar(1.0, phase) * z);
  }
  out.rhs = rhs;

  Kahan<std::complex<double>> series;
  std::complex<double> zpow = zm;
  for (long k = 1; k <= 4000; ++k) {
    series.add(zeta(static_cast<double>(m) * k) * zpow / static_cast<double>(k));
    zpow *= zm;
    if (std::abs(zpow) / (k + 1.0) < 1e-18) break;
  }
  out.wan_rhs = std::exp(series.value());
  return out;
}

double truncated_ppe_gamma_product(const Params& p, int m, double t,
                                   const Precision& prec) {
  if (m < 1 || m > 6)
    throw DomainError("truncated_ppe_gamma_product needs 1 <= m <= 6");
  if (!(t < 1.0)) throw DomainError("truncated_ppe_gamma_product needs t < 1");
  (void)prec;
  const double g1mt = gamma_fn(1.0 - t);
  std::complex<double> acc = 1.0;
  for (int mu = 1; mu <= m; ++mu) {
    const double f_mu = f_closed(p, mu);
    if (mu == 1) {
      acc *= gamma_fn(1.0 + f_mu - t) / (g1mt * gamma_fn(1.0 + f_mu));
      continue;
    }
    // Roots of j^mu = -f_mu as the principal power times the half-shifted
    // unit roots; the set is conjugation closed for real f_mu.
    const std::complex<double> radius =
        std::pow(std::complex<double>(f_mu), 1.0 / mu);
    for (int k = 0; k < mu; ++k) {
      const std::complex<double> root =
          radius * std::polar(1.0, std::numbers::pi * (2.0 * k + 1.0) / mu);
      acc *= gamma_fn(1.0 - t - root) / (g1mt * gamma_fn(1.0 - root));
    }
  }
  if (std::abs(acc.imag()) > 1e-10 * std::abs(acc))
    throw ConjugacyError("ppe gamma product has a spurious imaginary part");
  return acc.real();
}

double density_first_order(const Params& p, double x) {
  if (!(x > 0.0)) throw DomainError("density needs x > 0");
  const double rho = 1.0 / (1.0 - p.alpha);
  const double y = std::pow((1.0 - p.alpha) * x, -p.gamma);
  const double lg = std::log(p.gamma) - p.gamma * rho * std::log1p(-p.alpha) -
                    log_gamma(rho) - (1.0 + p.gamma * rho) * std::log(x) - y;
  return std::exp(lg);
}

double density_second_order(const Params& p, double x) {
  if (!(x > 0.0)) throw DomainError("density needs x > 0");
  const double rho = 1.0 / (1.0 - p.alpha);
  const double delta = std::sqrt(p.alpha / p.gamma);
  const double beta = delta / (1.0 - p.alpha);
  const double big_a = p.alpha / (1.0 - p.alpha);
  // The integrand has pole ladders l+rho, l+1+beta, l+1-beta; the
  // residue expansion below needs them pairwise disjoint mod 1.
  if (circular_distance(rho, 1.0 + beta) <= 1e-6 ||
      circular_distance(rho, 1.0 - beta) <= 1e-6 ||
      circular_distance(1.0 + beta, 1.0 - beta) <= 1e-6)
    throw PoleCollisionError("pole ladders collide at these parameters");

  const double log_big_x = std::log1p(-p.alpha) + std::log(x);
  const double y = std::exp(-p.gamma * log_big_x);

  const double t1 =
      GammaRatioSpec{{beta - big_a, -beta - big_a}, {-big_a, -big_a}}
          .evaluate() *
      std::exp(-p.gamma * rho * log_big_x) *
      hyp_2f2(rho, rho, rho - beta, rho + beta, -y);
  const double t2 =
      GammaRatioSpec{{big_a - beta, -2.0 * beta}, {-beta, -beta}}.evaluate() *
      std::exp(-p.gamma * (1.0 + beta) * log_big_x) *
      hyp_2f2(1.0 + beta, 1.0 + beta, 1.0 - big_a + beta, 1.0 + 2.0 * beta,
              -y);
  const double t3 =
      GammaRatioSpec{{big_a + beta, 2.0 * beta}, {beta, beta}}.evaluate() *
      std::exp(-p.gamma * (1.0 - beta) * log_big_x) *
      hyp_2f2(1.0 - beta, 1.0 - beta, 1.0 - big_a - beta, 1.0 - 2.0 * beta,
              -y);

  return p.gamma / x * rgamma(rho) * rgamma(1.0 + beta) * rgamma(1.0 - beta) *
         (t1 + t2 + t3);
}

double density_smallx_second(const Params& p, double x) {
  if (!(x > 0.0)) throw DomainError("density needs x > 0");
  const double rho = 1.0 / (1.0 - p.alpha);
  const double beta = std::sqrt(p.alpha / p.gamma) / (1.0 - p.alpha);
  if (nonpositive_integer(1.0 - beta))
    throw PoleError("density_smallx_second pole at integer beta");
  const double y = std::pow((1.0 - p.alpha) * x, -p.gamma);
  const double shape =
      std::exp(std::log(p.gamma) - p.gamma * rho * std::log1p(-p.alpha) -
               (1.0 + p.gamma * rho) * std::log(x) - y);
  return shape * rgamma(rho) * rgamma(1.0 + beta) * rgamma(1.0 - beta);
}

namespace {

// Inversion contour state shared across x evaluations: W(c + i tau) on a
// uniform tau grid, where W(t) = Gamma(1-t) (1-alpha)^{-gamma t}
// prod F_{j-t}/F_j. Conjugate symmetry folds the integral onto tau >= 0.
struct MBKernel {
  double c = 0.5;
  double step = 0.0;
  std::vector<std::complex<double>> w;

  double density(const Params& p, double x) const {
    const double lx = std::log(x);
    Kahan<double> acc;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const std::complex<double> t(c, k * step);
      const double term = (w[k] * std::exp(-p.gamma * t * lx)).real();
      acc.add(k == 0 || k + 1 == w.size() ? 0.5 * term : term);
    }
    return p.gamma / (std::numbers::pi * x) * step * acc.value();
  }
};

MBKernel build_mb_kernel(const Params& p, double c, long J, long quad_nodes,
                         double x_lo, double x_hi, const Precision& prec) {
  if (!(c < 1.0)) throw DomainError("mellin_barnes needs c < 1");
  MBKernel kernel;
  kernel.c = c;
  // Nodes must resolve the x^{-i gamma tau} oscillation on the worst x of
  // the sweep as well as the Gamma factor's own phase.
  const double osc =
      p.gamma * std::max(std::abs(std::log(x_lo)), std::abs(std::log(x_hi)));
  kernel.step = std::min(0.04, 2.0 * std::numbers::pi / (12.0 * osc + 40.0));
  constexpr double kTauMax = 80.0;
  if (quad_nodes > 0) kernel.step = kTauMax / quad_nodes;

  double peak = 0.0;
  int quiet = 0;
  for (long k = 0; k * kernel.step <= kTauMax; ++k) {
    const std::complex<double> t(c, k * kernel.step);
    const std::complex<double> val =
        gamma_fn(1.0 - t) * g_interp_impl<std::complex<double>>(p, t, J, prec);
    kernel.w.push_back(val);
    peak = std::max(peak, std::abs(val));
    quiet = std::abs(val) < 1e-9 * peak ? quiet + 1 : 0;
    if (quiet >= 3 && quad_nodes <= 0) return kernel;
    if (quad_nodes > 0 && k >= quad_nodes) return kernel;
  }
  if (quad_nodes > 0) return kernel;
  throw TailError("mellin_barnes integrand not below target by tau = 80");
}

}  // namespace

double density_mellin_barnes(const Params& p, double x, double c,
                             long truncation_J, long quad_nodes,
                             const Precision& prec) {
  if (!(x > 0.0)) throw DomainError("density needs x > 0");
  const double band = (1.0 - p.alpha) * x;
  if (band < 0.2 || band > 5.0)
    throw DomainError("mellin_barnes band is 0.2 <= (1-alpha)x <= 5");
  const MBKernel kernel =
      build_mb_kernel(p, c, truncation_J, quad_nodes, x, x, prec);
  return kernel.density(p, x);
}

DensityCurve density_curve(const Params& p, DensityOrder order,
                           const std::vector<double>& xs,
                           const Precision& prec) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw DomainError("density_curve needs strictly increasing x");
  DensityCurve curve;
  curve.order = order;
  if (order == DensityOrder::MellinBarnesOracle) {
    std::vector<double> in_band;
    for (double x : xs) {
      const double band = (1.0 - p.alpha) * x;
      if (band >= 0.2 && band <= 5.0) in_band.push_back(x);
    }
    if (in_band.empty()) return curve;
    const MBKernel kernel = build_mb_kernel(p, 0.5, 1000, 0, in_band.front(),
                                            in_band.back(), prec);
    for (double x : in_band)
      curve.samples.emplace_back(x, kernel.density(p, x));
    return curve;
  }
  for (double x : xs) {
    double h = 0.0;
    switch (order) {
      case DensityOrder::FirstOrder:
        h = density_first_order(p, x);
        break;
      case DensityOrder::SecondOrder:
        h = density_second_order(p, x);
        break;
      default:
        h = density_smallx_second(p, x);
        break;
    }
    curve.samples.emplace_back(x, h);
  }
  return curve;
}

}  // namespace alphasun
