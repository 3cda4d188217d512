#include "alphasun/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "alphasun/specfun.hpp"

namespace alphasun {

double CoeffTable::scaled(int n) const {
  if (!contains(n))
    throw DomainError("CoeffTable: index " + std::to_string(n) +
                      " outside [" + std::to_string(first_index) + ", " +
                      std::to_string(max_index()) + "]");
  return values[static_cast<std::size_t>(n - first_index)];
}

SeriesCoeffs as_series(const CoeffTable& a) {
  if (a.first_index != 1)
    throw DomainError("as_series: expects a family based at index 1");
  return SeriesCoeffs{a.params, a.scale, a.values};
}

namespace detail {

// Scaled coefficient w_n = t_n * scale^n by the Stirling sum. Every
// summand is positive, so the long double accumulation is benign; the
// only cancellation in t_n lives in its sign prefactor.
long double t_stirling_scaled(const Params& p, int n, long double scale) {
  if (n < 0) throw DomainError("t_stirling: n must be >= 0");
  if (n == 0) return 1.0L;
  if (p.alpha == 0.0) return 0.0L;
  stirling2_prepare(n);
  const long double abar =
      static_cast<long double>(p.alpha) / (1.0L - static_cast<long double>(p.alpha));
  long double poch = 1.0L;  // (gamma)_i
  long double apow = 1.0L;  // abar^i
  long double sum = 0.0L;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) {
      poch *= static_cast<long double>(p.gamma) + (i - 1);
      apow *= abar;
    }
    sum += static_cast<long double>(stirling2(n, i)) * poch * apow;
  }
  const long double ratio = scale / static_cast<long double>(p.gamma);
  const long double sign = (n % 2 == 0) ? 1.0L : -1.0L;
  return sign * sum * std::pow(ratio, static_cast<long double>(n));
}

}  // namespace detail

double t_stirling(const Params& p, int n) {
  return static_cast<double>(detail::t_stirling_scaled(p, n, 1.0L));
}

CoeffTable t_stirling_table(const Params& p, int n_max, double scale) {
  if (n_max < 0) throw DomainError("t_stirling_table: n_max must be >= 0");
  stirling2_prepare(n_max);
  CoeffTable out{p, Method::StirlingSum, 0, scale, {}};
  out.values.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    out.values.push_back(
        static_cast<double>(detail::t_stirling_scaled(p, n, scale)));
  return out;
}

CoeffTable t_recurrence(const Params& p, int n_max, double scale) {
  if (n_max < 0) throw DomainError("t_recurrence: n_max must be >= 0");
  // w[k] holds the order-j row of t(gamma+k) * scale^j, shrinking in k as
  // j climbs; anchored at the order-0 value 1 for every shift.
  std::vector<long double> w(n_max + 1, 1.0L);
  CoeffTable out{p, Method::Recurrence, 0, scale, {}};
  out.values.reserve(n_max + 1);
  out.values.push_back(1.0);
  const long double s = scale;
  const long double inv1ma = 1.0L / (1.0L - static_cast<long double>(p.alpha));
  for (int j = 1; j <= n_max; ++j) {
    for (int k = 0; k + j <= n_max; ++k) {
      const long double ratio =
          1.0L + 1.0L / (static_cast<long double>(p.gamma) + k);
      w[k] = s * w[k] -
             s * inv1ma * std::pow(ratio, static_cast<long double>(j - 1)) *
                 w[k + 1];
    }
    out.values.push_back(static_cast<double>(w[0]));
  }
  return out;
}

namespace {

// ln of the alpha-power series sum for order n >= 1 (without the sign and
// the gamma^{-n}(1-alpha)^gamma prefactors): peak-centered so no term
// overflows. Returns ln sum_{l>=1} l^n (gamma)_l alpha^l / l!.
long double t_series_log_sum(const Params& p, int n, const Precision& prec) {
  const long double L = -std::log(static_cast<long double>(p.alpha));
  const long double lg_gamma = log_gamma(p.gamma);
  auto phi = [&](long l) -> long double {
    const long double ld = l;
    return static_cast<long double>(n) * std::log(ld) +
           static_cast<long double>(log_gamma(p.gamma + static_cast<double>(l))) -
           lg_gamma -
           static_cast<long double>(std::lgamma(static_cast<double>(l) + 1.0)) -
           ld * L;
  };
  const long l0 = std::max<long>(
      1, static_cast<long>((n + p.gamma - 1.0) / static_cast<double>(L)));
  const long double m = phi(l0);
  Kahan<long double> sum;
  const long double cut = static_cast<long double>(prec.rel_tol) * 0.5L;
  long used = 0;
  for (long l = l0; l >= 1; --l) {
    const long double t = std::exp(phi(l) - m);
    sum.add(t);
    if (t < cut) break;
  }
  for (long l = l0 + 1;; ++l) {
    if (++used > prec.max_terms)
      throw NonConvergence("t_alpha_series: term budget exhausted at n = " +
                           std::to_string(n));
    const long double t = std::exp(phi(l) - m);
    sum.add(t);
    if (t < cut) break;
  }
  return m + std::log(sum.value());
}

}  // namespace

double t_alpha_series(const Params& p, int n, const Precision& prec) {
  prec.validate();
  if (n < 0) throw DomainError("t_alpha_series: n must be >= 0");
  if (n == 0) return 1.0;
  if (p.alpha == 0.0) return 0.0;
  const long double lg =
      t_series_log_sum(p, n, prec) -
      static_cast<long double>(n) * std::log(static_cast<long double>(p.gamma)) +
      static_cast<long double>(p.gamma) *
          std::log1p(-static_cast<long double>(p.alpha));
  return static_cast<double>(t_sign(n) * std::exp(lg));
}

CoeffTable t_alpha_series_table(const Params& p, int n_max,
                                const Precision& prec, double scale) {
  prec.validate();
  if (n_max < 0) throw DomainError("t_alpha_series_table: n_max must be >= 0");
  CoeffTable out{p, Method::AlphaSeries, 0, scale, {}};
  out.values.reserve(n_max + 1);
  out.values.push_back(1.0);
  const long double log_scale = std::log(static_cast<long double>(scale));
  for (int n = 1; n <= n_max; ++n) {
    if (p.alpha == 0.0) {
      out.values.push_back(0.0);
      continue;
    }
    const long double lg =
        t_series_log_sum(p, n, prec) +
        static_cast<long double>(n) *
            (log_scale - std::log(static_cast<long double>(p.gamma))) +
        static_cast<long double>(p.gamma) *
            std::log1p(-static_cast<long double>(p.alpha));
    out.values.push_back(static_cast<double>(t_sign(n) * std::exp(lg)));
  }
  return out;
}

double t_log_abs(const Params& p, int n) {
  if (n < 0) throw DomainError("t_log_abs: n must be >= 0");
  if (n == 0) return 0.0;
  if (p.alpha == 0.0)
    return -std::numeric_limits<double>::infinity();
  stirling2_prepare(n);
  const long double abar =
      static_cast<long double>(p.alpha) / (1.0L - static_cast<long double>(p.alpha));
  long double poch = 1.0L;
  long double apow = 1.0L;
  long double sum = 0.0L;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) {
      poch *= static_cast<long double>(p.gamma) + (i - 1);
      apow *= abar;
    }
    sum += static_cast<long double>(stirling2(n, i)) * poch * apow;
  }
  return static_cast<double>(
      std::log(sum) -
      static_cast<long double>(n) * std::log(static_cast<long double>(p.gamma)));
}

namespace {

std::vector<double> require_t_vector(const CoeffTable& t, const char* who) {
  if (t.first_index != 0 || t.values.empty() ||
      std::abs(t.values[0] - 1.0) > 1e-12)
    throw DomainError(std::string(who) + ": expects a t table with t_0 = 1");
  return t.values;
}

// index-1 families come out of the 0-based kernels with slot 0 dropped
CoeffTable based_at_one(const Params& p, Method m, double scale,
                        std::vector<double> v0) {
  CoeffTable out{p, m, 1, scale, {}};
  out.values.assign(v0.begin() + 1, v0.end());
  return out;
}

}  // namespace

CoeffTable a_from_t(const CoeffTable& t) {
  auto v = require_t_vector(t, "a_from_t");
  return based_at_one(t.params, Method::ToeplitzSolve, t.scale,
                      kernels::a_from_t(v));
}

CoeffTable t_from_a(const SeriesCoeffs& a) {
  std::vector<double> v0(a.coeffs.size() + 1);
  v0[0] = 1.0;
  std::copy(a.coeffs.begin(), a.coeffs.end(), v0.begin() + 1);
  CoeffTable out{a.params, Method::ToeplitzSolve, 0, a.scale, {}};
  out.values = kernels::t_from_a(v0);
  return out;
}

CoeffTable d_from_t(const CoeffTable& t) {
  auto v = require_t_vector(t, "d_from_t");
  return based_at_one(t.params, Method::Convolution, t.scale,
                      kernels::d_from_t(v));
}

CoeffTable f_from_divisors(const CoeffTable& d, int n_max) {
  if (d.first_index != 1)
    throw DomainError("f_from_divisors: expects a d table based at index 1");
  if (n_max < 1 || n_max > d.max_index())
    throw DomainError("f_from_divisors: n_max outside the d table range");
  std::vector<double> v0(n_max + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) v0[n] = d.scaled(n);
  return based_at_one(d.params, Method::DivisorFormula, d.scale,
                      kernels::f_from_divisors(v0));
}

CoeffTable a_from_f(const CoeffTable& f) {
  if (f.first_index != 1)
    throw DomainError("a_from_f: expects an f table based at index 1");
  std::vector<double> v0(f.values.size() + 1, 0.0);
  std::copy(f.values.begin(), f.values.end(), v0.begin() + 1);
  return based_at_one(f.params, Method::Convolution, f.scale,
                      kernels::a_from_f(v0));
}

namespace {
constexpr int kPpeOrderCap = 64;
}

CoeffTable f_ppe_recursive(const CoeffTable& t) {
  if (t.max_index() > kPpeOrderCap)
    throw ComplexityError("f_ppe_recursive: order " +
                          std::to_string(t.max_index()) +
                          " past the supported cap " +
                          std::to_string(kPpeOrderCap) +
                          "; use the divisor route for large orders");
  auto v = require_t_vector(t, "f_ppe_recursive");
  auto f = kernels::f_ppe(v);
  return based_at_one(t.params, Method::PPERecursion, t.scale, f);
}

CoeffTable f_ppe_recursive(const Params& p, int m_max, const Precision& prec) {
  prec.validate();
  if (m_max < 1) throw DomainError("f_ppe_recursive: m_max must be >= 1");
  if (m_max > kPpeOrderCap)
    throw ComplexityError("f_ppe_recursive: m_max " + std::to_string(m_max) +
                          " past the supported cap " +
                          std::to_string(kPpeOrderCap) +
                          "; use the divisor route for large orders");
  return f_ppe_recursive(t_stirling_table(p, m_max));
}

double a_multinomial(const CoeffTable& t, int n) {
  if (n > 20)
    throw ComplexityError("a_multinomial: n = " + std::to_string(n) +
                          " past the enumeration cap 20");
  if (n < 1) throw DomainError("a_multinomial: n must be >= 1");
  auto v = require_t_vector(t, "a_multinomial");
  if (n > t.max_index())
    throw DomainError("a_multinomial: table shorter than n");

  // factorials to 20! are exact in long double
  long double fact[21];
  fact[0] = 1.0L;
  for (int i = 1; i <= 20; ++i) fact[i] = fact[i - 1] * i;

  Kahan<long double> acc;
  // descend over parts in nonincreasing order; a run of equal parts l
  // contributes t_l^{m_l} / m_l! to the multinomial weight
  auto rec = [&](auto&& self, int remaining, int max_part, long double prod,
                 int total_parts) -> void {
    if (remaining == 0) {
      const long double sign = (total_parts % 2 == 0) ? 1.0L : -1.0L;
      acc.add(sign * fact[total_parts] * prod);
      return;
    }
    for (int l = std::min(remaining, max_part); l >= 1; --l) {
      long double pw = prod;
      for (int m = 1; l * m <= remaining; ++m) {
        pw *= static_cast<long double>(v[l]) / m;
        self(self, remaining - l * m, l - 1, pw, total_parts + m);
      }
    }
  };
  rec(rec, n, n, 1.0L, 0);
  return static_cast<double>(acc.value());
}

double d_a_check(const SeriesCoeffs& a, const CoeffTable& d) {
  if (d.first_index != 1)
    throw DomainError("d_a_check: expects a d table based at index 1");
  const int m_max = std::min(a.order(), d.max_index());
  double worst = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    Kahan<double> lhs;
    lhs.add(m * a.coeffs[m - 1]);
    lhs.add(-d.scaled(m));
    double largest = std::max(std::abs(m * a.coeffs[m - 1]),
                              std::abs(d.scaled(m)));
    for (int k = 1; k < m; ++k) {
      const double term = d.scaled(k) * a.coeffs[m - k - 1];
      lhs.add(-term);
      largest = std::max(largest, std::abs(term));
    }
    if (largest == 0.0) largest = 1.0;
    worst = std::max(worst, std::abs(lhs.value()) / largest);
  }
  return worst;
}

double unified_relation_check(const CoeffTable& t, const CoeffTable& f) {
  auto tv = require_t_vector(t, "unified_relation_check");
  if (f.first_index != 1)
    throw DomainError("unified_relation_check: expects f based at index 1");
  const int n_max = std::min(t.max_index(), f.max_index());
  std::vector<double> fv(n_max + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) fv[n] = f.scaled(n);
  const auto av = kernels::a_from_f(fv);
  double worst = 0.0;
  for (int M = 1; M <= n_max; ++M) {
    Kahan<double> sum;
    double largest = 0.0;
    for (int n = 0; n <= M; ++n) {
      const double term = tv[n] * av[M - n];
      sum.add(term);
      largest = std::max(largest, std::abs(term));
    }
    if (largest == 0.0) largest = 1.0;
    worst = std::max(worst, std::abs(sum.value()) / largest);
  }
  return worst;
}

double t_egf_check(const Params& p, int n_max, double z0) {
  if (n_max < 0) throw DomainError("t_egf_check: n_max must be >= 0");
  if (p.alpha > 0.0 && std::abs(z0) > 0.1 * p.gamma * p.log_inv_alpha())
    throw DomainError(
        "t_egf_check: |z0| must stay within a tenth of the EGF radius");
  Kahan<long double> lhs;
  long double zpow = 1.0L;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) zpow *= static_cast<long double>(z0) / n;
    lhs.add(detail::t_stirling_scaled(p, n, 1.0L) * zpow);
  }
  const long double rhs =
      std::exp(static_cast<long double>(p.gamma) *
               std::log1p(-static_cast<long double>(p.alpha))) *
      std::pow(1.0L - static_cast<long double>(p.alpha) *
                          std::exp(-static_cast<long double>(z0) /
                                   static_cast<long double>(p.gamma)),
               -static_cast<long double>(p.gamma));
  return static_cast<double>(std::abs(lhs.value() - rhs));
}

double power_sum_identity_check(const Params& p, int m, const Precision& prec) {
  prec.validate();
  if (m < 0 || m > 12)
    throw DomainError("power_sum_identity_check: m must lie in 0..12");
  if (p.alpha == 0.0)
    throw DomainError("power_sum_identity_check: needs 0 < alpha < 1");

  Kahan<long double> lhs;
  long double coef = 1.0L;  // alpha^k (gamma)_k / k!
  int quiet = 0;
  for (long k = 0;; ++k) {
    if (k > prec.max_terms)
      throw NonConvergence("power_sum_identity_check: term budget exhausted");
    if (k > 0)
      coef *= static_cast<long double>(p.alpha) *
              (static_cast<long double>(p.gamma) + (k - 1)) / k;
    const long double term =
        (k == 0 && m > 0)
            ? 0.0L
            : coef * std::pow(static_cast<long double>(k),
                              static_cast<long double>(m));
    lhs.add(term);
    if (k > 0 && std::abs(term) <= static_cast<long double>(prec.rel_tol) *
                                       std::abs(lhs.value())) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }

  stirling2_prepare(m);
  const long double abar =
      static_cast<long double>(p.alpha) / (1.0L - static_cast<long double>(p.alpha));
  long double poch = 1.0L;
  long double apow = 1.0L;
  long double rhs_sum = 0.0L;
  for (int l = 0; l <= m; ++l) {
    if (l > 0) {
      poch *= static_cast<long double>(p.gamma) + (l - 1);
      apow *= abar;
    }
    rhs_sum += static_cast<long double>(stirling2(m, l)) * poch * apow;
  }
  const long double rhs =
      std::exp(-static_cast<long double>(p.gamma) *
               std::log1p(-static_cast<long double>(p.alpha))) *
      rhs_sum;
  return static_cast<double>(std::abs(lhs.value() - rhs) / std::abs(rhs));
}

bool sign_alternates(const CoeffTable& t) {
  if (t.first_index != 0) throw DomainError("sign_alternates: t table expected");
  if (t.params.alpha == 0.0) return true;
  for (int n = 0; n <= t.max_index(); ++n) {
    const double v = t.scaled(n);
    if (!(t_sign(n) * v > 0.0)) return false;
  }
  return true;
}

double t_closed(const Params& p, int n) {
  const double A = p.alpha, g = p.gamma, u = 1.0 - p.alpha;
  switch (n) {
    case 0:
      return 1.0;
    case 1:
      return -A / u;
    case 2:
      return (A * A * g + A) / (u * u * g);
    case 3:
      return -(A * A * A * g * g + A * A * (3 * g + 1) + A) /
             (u * u * u * g * g);
    case 4: {
      const double num = std::pow(A, 4) * std::pow(g, 3) +
                         std::pow(A, 3) * (6 * g * g + 4 * g + 1) +
                         A * A * (7 * g + 4) + A;
      return num / (std::pow(u, 4) * std::pow(g, 3));
    }
    case 5: {
      const double num =
          std::pow(A, 5) * std::pow(g, 4) +
          std::pow(A, 4) * (10 * g * g * g + 10 * g * g + 5 * g + 1) +
          std::pow(A, 3) * (25 * g * g + 30 * g + 11) + A * A * (15 * g + 11) +
          A;
      return -num / (std::pow(u, 5) * std::pow(g, 4));
    }
    case 6: {
      const double num =
          std::pow(A, 6) * std::pow(g, 5) +
          std::pow(A, 5) *
              (15 * std::pow(g, 4) + 20 * g * g * g + 15 * g * g + 6 * g + 1) +
          std::pow(A, 4) * (65 * g * g * g + 120 * g * g + 91 * g + 26) +
          std::pow(A, 3) * (90 * g * g + 146 * g + 66) + A * A * (31 * g + 26) +
          A;
      return num / (std::pow(u, 6) * std::pow(g, 5));
    }
    default:
      throw DomainError("t_closed: n must lie in 0..6");
  }
}

double f_closed(const Params& p, int n) {
  const double A = p.alpha, g = p.gamma, u = 1.0 - p.alpha;
  switch (n) {
    case 1:
      return A / u;
    case 2:
      return -A / (u * u * g);
    case 3:
      return A * (A * (2 * g + 1) + 1) / (u * u * u * g * g);
    case 4: {
      const double num = A * A * (3 * g * g + 3 * g + 1) + A * (5 * g + 4) + 1;
      return -A * num / (std::pow(u, 4) * std::pow(g, 3));
    }
    case 5: {
      const double num =
          std::pow(A, 3) * (4 * g * g * g + 6 * g * g + 4 * g + 1) +
          A * A * (16 * g * g + 25 * g + 11) + A * (13 * g + 11) + 1;
      return A * num / (std::pow(u, 5) * std::pow(g, 4));
    }
    case 6: {
      const double num =
          std::pow(A, 4) *
              (5 * std::pow(g, 4) + 10 * g * g * g + 10 * g * g + 5 * g + 1) +
          std::pow(A, 3) * (33 * g * g * g + 83 * g * g + 78 * g + 26) +
          A * A * (65 * g * g + 129 * g + 66) + 2 * A * (14 * g + 13) + 1;
      return -A * num / (std::pow(u, 6) * std::pow(g, 5));
    }
    default:
      throw DomainError("f_closed: n must lie in 1..6");
  }
}

double a_closed(const Params& p, int n) {
  if (n < 1 || n > 6) throw DomainError("a_closed: n must lie in 1..6");
  double f[7];
  for (int k = 1; k <= n; ++k) f[k] = f_closed(p, k);
  switch (n) {
    case 1:
      return f[1];
    case 2:
      return f[2];
    case 3:
      return f[3] + f[2] * f[1];
    case 4:
      return f[4] + f[3] * f[1];
    case 5:
      return f[5] + f[4] * f[1] + f[3] * f[2];
    default:
      return f[6] + f[5] * f[1] + f[4] * f[2] + f[3] * f[2] * f[1];
  }
}

double f_from_t_closed(const double* t, int n) {
  switch (n) {
    case 1:
      return -t[1];
    case 2:
      return t[1] * t[1] - t[2];
    case 3:
      return t[1] * t[2] - t[3];
    case 4:
      return std::pow(t[1], 4) - 2 * t[2] * t[1] * t[1] + t[3] * t[1] +
             t[2] * t[2] - t[4];
    case 5:
      return t[2] * std::pow(t[1], 3) - t[3] * t[1] * t[1] -
             t[2] * t[2] * t[1] + t[4] * t[1] + t[2] * t[3] - t[5];
    case 6:
      return t[3] * std::pow(t[1], 3) + t[2] * t[2] * t[1] * t[1] -
             t[4] * t[1] * t[1] - 3 * t[2] * t[3] * t[1] + t[5] * t[1] +
             t[3] * t[3] + t[2] * t[4] - t[6];
    default:
      throw DomainError("f_from_t_closed: n must lie in 1..6");
  }
}

double f_from_t_closed(const Params& p, int n) {
  if (n < 1 || n > 6) throw DomainError("f_from_t_closed: n must lie in 1..6");
  double t[7];
  for (int k = 1; k <= n; ++k) t[k] = t_closed(p, k);
  return f_from_t_closed(t, n);
}

}  // namespace alphasun
