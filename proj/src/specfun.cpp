#include "alphasun/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "alphasun/kahan.hpp"

namespace alphasun {

namespace {

constexpr double kPoleTol = 1e-12;

// Lanczos with g = 607/128, 15 terms. Run in long double: the polynomial
// itself is good to ~1e-15 relative, and the extended mantissa keeps the
// pow/exp amplification at z near 170 from eating the budget.
constexpr long double kLanczosG = 607.0L / 128.0L;
constexpr long double kLanczos[15] = {
    0.99999999999999709182L,
    57.156235665862923517L,
    -59.597960355475491248L,
    14.136097974741747174L,
    -0.49191381609762019978L,
    3.3994649984811888699e-5L,
    4.6523628927048575665e-5L,
    -9.8374475304879564677e-5L,
    1.5808870322491248884e-4L,
    -2.1026444172410488319e-4L,
    2.1743961811521264320e-4L,
    -1.6431810653676389022e-4L,
    8.4418223983852743293e-5L,
    -2.6190838401581408670e-5L,
    3.6899182659531622704e-6L,
};

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kSqrtTwoPi = 2.50662827463100050241576528481104525L;

bool near_nonpositive_integer(double x) {
  if (x > 0.5) return false;
  const double r = std::round(x);
  return std::abs(x - r) <= kPoleTol;
}

// Lanczos core, Re z >= 0.5 assumed.
template <class C>
C lanczos_gamma(C z) {
  C a = kLanczos[0];
  for (int k = 1; k < 15; ++k) a += kLanczos[k] / (z - C(1) + C(k));
  const C base = z + C(kLanczosG) - C(0.5L);
  return C(kSqrtTwoPi) * a * std::pow(base, z - C(0.5L)) * std::exp(-base);
}

// sin(pi x) with the integer part peeled off first, so the argument of
// the library sin stays in [-1/2, 1/2] and large |x| loses nothing.
long double sinpi(long double x) {
  const long double r = x - std::round(x);
  const long double s = std::sin(kPi * r);
  return (static_cast<long long>(std::llround(x - r)) % 2 == 0) ? s : -s;
}

std::complex<long double> sinpi(std::complex<long double> z) {
  const long double r = z.real() - std::round(z.real());
  std::complex<long double> s =
      std::sin(std::complex<long double>(kPi * r, kPi * z.imag()));
  return (static_cast<long long>(std::llround(z.real() - r)) % 2 == 0) ? s : -s;
}

}  // namespace

double gamma_fn(double x) {
  if (near_nonpositive_integer(x))
    throw PoleError("gamma_fn: pole at x = " + std::to_string(x));
  if (x >= 0.5)
    return static_cast<double>(lanczos_gamma<long double>(x));
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  const long double lx = x;
  return static_cast<double>(kPi / (sinpi(lx) * lanczos_gamma<long double>(1.0L - lx)));
}

std::complex<double> gamma_fn(std::complex<double> z) {
  if (std::abs(z.imag()) <= kPoleTol && near_nonpositive_integer(z.real()))
    throw PoleError("gamma_fn: pole at z = " + std::to_string(z.real()));
  const std::complex<long double> lz(z.real(), z.imag());
  std::complex<long double> g;
  if (z.real() >= 0.5) {
    g = lanczos_gamma(lz);
  } else {
    g = kPi / (sinpi(lz) * lanczos_gamma(std::complex<long double>(1.0L) - lz));
  }
  return {static_cast<double>(g.real()), static_cast<double>(g.imag())};
}

double log_gamma(double x) {
  if (!(x > 0.0))
    throw DomainError("log_gamma: needs x > 0, got " + std::to_string(x));
  long double lx = x;
  long double shift = 0.0L;
  if (lx < 0.5L) {
    // Gamma(x) = Gamma(x+1)/x keeps the core argument in its sweet spot.
    shift = -std::log(lx);
    lx += 1.0L;
  }
  long double a = kLanczos[0];
  for (int k = 1; k < 15; ++k) a += kLanczos[k] / (lx - 1.0L + k);
  const long double base = lx + kLanczosG - 0.5L;
  const long double lg = std::log(kSqrtTwoPi) + std::log(a) +
                         (lx - 0.5L) * std::log(base) - base;
  return static_cast<double>(lg + shift);
}

double rgamma(double x) {
  if (near_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5)
    return static_cast<double>(1.0L / lanczos_gamma<long double>(static_cast<long double>(x)));
  const long double lx = x;
  return static_cast<double>(sinpi(lx) * lanczos_gamma<long double>(1.0L - lx) / kPi);
}

double pochhammer(double x, int k) {
  if (k < 0) throw DomainError("pochhammer: k must be >= 0");
  long double p = 1.0L;
  for (int m = 0; m < k; ++m) p *= static_cast<long double>(x) + m;
  return static_cast<double>(p);
}

double log_pochhammer(double x, int k) {
  if (k < 0) throw DomainError("log_pochhammer: k must be >= 0");
  if (!(x > 0.0)) throw DomainError("log_pochhammer: needs x > 0");
  if (k == 0) return 0.0;
  return log_gamma(x + k) - log_gamma(x);
}

namespace {

constexpr int kStirlingMax = 300;

// Triangle rows S(n, .), grown on demand. Readers take the shared lock;
// growth is rare and takes the exclusive one.
std::shared_mutex stirling_mutex;
std::vector<std::vector<bigint>> stirling_rows;

void grow_stirling_locked(int n_max) {
  if (stirling_rows.empty()) stirling_rows.push_back({bigint(1)});
  for (int n = static_cast<int>(stirling_rows.size()); n <= n_max; ++n) {
    std::vector<bigint> row(n + 1);
    row[0] = 0;
    row[n] = 1;
    for (int i = 1; i < n; ++i)
      row[i] = bigint(i) * stirling_rows[n - 1][i] + stirling_rows[n - 1][i - 1];
    stirling_rows.push_back(std::move(row));
  }
}

}  // namespace

int stirling2_max_order() { return kStirlingMax; }

void stirling2_prepare(int n_max) {
  if (n_max > kStirlingMax)
    throw ComplexityError("stirling2: order " + std::to_string(n_max) +
                          " exceeds the supported table (max " +
                          std::to_string(kStirlingMax) + ")");
  std::unique_lock lock(stirling_mutex);
  grow_stirling_locked(n_max);
}

bigint stirling2(int n, int i) {
  if (n < 0 || i < 0 || i > n)
    throw DomainError("stirling2: need 0 <= i <= n");
  if (n > kStirlingMax)
    throw ComplexityError("stirling2: order " + std::to_string(n) +
                          " exceeds the supported table (max " +
                          std::to_string(kStirlingMax) + ")");
  {
    std::shared_lock lock(stirling_mutex);
    if (n < static_cast<int>(stirling_rows.size())) return stirling_rows[n][i];
  }
  std::unique_lock lock(stirling_mutex);
  grow_stirling_locked(n);
  return stirling_rows[n][i];
}

double gauss_2f1(double a, double b, double c, double z,
                 const Precision& prec) {
  prec.validate();
  if (near_nonpositive_integer(c))
    throw PoleError("gauss_2f1: c = " + std::to_string(c) +
                    " is a nonpositive integer");
  if (!(std::abs(z) < 1.0))
    throw DomainError("gauss_2f1: series needs |z| < 1, got z = " +
                      std::to_string(z));
  Kahan<long double> sum;
  long double term = 1.0L;
  sum.add(term);
  int quiet = 0;
  for (long k = 0; k < prec.max_terms; ++k) {
    term *= (static_cast<long double>(a) + k) * (static_cast<long double>(b) + k) /
            ((static_cast<long double>(c) + k) * (k + 1.0L)) *
            static_cast<long double>(z);
    sum.add(term);
    if (std::abs(term) <=
        static_cast<long double>(prec.rel_tol) * std::abs(sum.value())) {
      if (++quiet >= 3) return static_cast<double>(sum.value());
    } else {
      quiet = 0;
    }
  }
  throw NonConvergence("gauss_2f1: term budget exhausted at z = " +
                       std::to_string(z));
}

namespace {

template <typename Real>
double hyp_2f2_series(double a1, double a2, double b1, double b2, double z,
                      const Precision& prec) {
  Kahan<Real> sum;
  Real term = 1;
  sum.add(term);
  int quiet = 0;
  for (long k = 0; k < prec.max_terms; ++k) {
    term *= (Real(a1) + k) * (Real(a2) + k) /
            ((Real(b1) + k) * (Real(b2) + k) * Real(k + 1)) * Real(z);
    sum.add(term);
    using std::abs;
    if (abs(term) <= Real(prec.rel_tol) * abs(sum.value())) {
      if (++quiet >= 3) return static_cast<double>(sum.value());
    } else {
      quiet = 0;
    }
  }
  throw NonConvergence("hyp_2f2: term budget exhausted at z = " +
                       std::to_string(z));
}

}  // namespace

double hyp_2f2(double a1, double a2, double b1, double b2, double z,
               const Precision& prec) {
  prec.validate();
  if (near_nonpositive_integer(b1) || near_nonpositive_integer(b2))
    throw PoleError("hyp_2f2: lower parameter is a nonpositive integer");
  // Alternating cancellation at z < 0 costs ~ 0.87|z| decimal digits
  // (peak term e^{|z|} against an O(1) value), so hand anything past the
  // long double budget to a 100-digit lane and refuse past its budget.
  if (z < -100.0)
    throw NonConvergence("hyp_2f2: cancellation exceeds precision at z = " +
                         std::to_string(z));
  if (z < -8.0)
    return hyp_2f2_series<boost::multiprecision::cpp_bin_float_100>(
        a1, a2, b1, b2, z, prec);
  return hyp_2f2_series<long double>(a1, a2, b1, b2, z, prec);
}

double polylog(double s, double z, const Precision& prec) {
  prec.validate();
  if (!(z > 0.0 && z < 1.0))
    throw DomainError("polylog: needs 0 < z < 1, got z = " + std::to_string(z));
  const double L = -std::log(z);  // ln(1/z) > 0

  if (s >= 0.0) {
    Kahan<long double> sum;
    int quiet = 0;
    for (long k = 1; k <= prec.max_terms; ++k) {
      const long double term =
          std::exp(-static_cast<long double>(k) * L - s * std::log(static_cast<long double>(k)));
      sum.add(term);
      if (term <= static_cast<long double>(prec.rel_tol) * std::abs(sum.value())) {
        if (++quiet >= 3) return static_cast<double>(sum.value());
      } else {
        quiet = 0;
      }
    }
    throw NonConvergence("polylog: term budget exhausted, s = " +
                         std::to_string(s));
  }

  // s < 0: the summand e^{phi(k)}, phi(k) = -kL - s ln k, peaks at
  // k* = -s/L. Sum outward from the peak with the peak value factored
  // out, so nothing overflows until the final exponential.
  const double kstar = -s / L;
  const long k0 = std::max<long>(1, static_cast<long>(kstar));
  auto phi = [&](long k) -> long double {
    return -static_cast<long double>(k) * L -
           static_cast<long double>(s) * std::log(static_cast<long double>(k));
  };
  const long double m = phi(k0);
  Kahan<long double> sum;
  const long double cut = static_cast<long double>(prec.rel_tol) * 0.5L;
  long added = 0;
  for (long k = k0; k >= 1; --k) {
    const long double t = std::exp(phi(k) - m);
    sum.add(t);
    ++added;
    if (t < cut) break;
  }
  for (long k = k0 + 1;; ++k) {
    if (added++ > prec.max_terms)
      throw NonConvergence("polylog: term budget exhausted, s = " +
                           std::to_string(s));
    const long double t = std::exp(phi(k) - m);
    sum.add(t);
    if (t < cut) break;
  }
  return static_cast<double>(std::exp(m + std::log(sum.value())));
}

double lambert_w0(double x) {
  constexpr double kBranch = -0.36787944117144232160;  // -1/e
  if (x < kBranch - 1e-12)
    throw DomainError("lambert_w0: x below -1/e, got " + std::to_string(x));
  if (x == 0.0) return 0.0;
  if (x <= kBranch) return -1.0;

  // For huge x the defining equation is solved in log form (w e^w would
  // overflow long before w does); Newton on w + ln w - ln x.
  if (x > 1e100) {
    const double lx = std::log(x);
    double w = lx - std::log(lx);
    for (int it = 0; it < 50; ++it) {
      const double g = w + std::log(w) - lx;
      const double step = g / (1.0 + 1.0 / w);
      w -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
    }
    if (std::abs(w + std::log(w) - lx) > 1e-13 * (1.0 + std::abs(lx)))
      throw NonConvergence("lambert_w0: log-form iteration stalled");
    return w;
  }

  long double w;
  if (x < -0.25) {
    // near the branch point: series in p = sqrt(2(1+ex))
    const long double p = std::sqrt(2.0L * (1.0L + 2.71828182845904523536L *
                                                       static_cast<long double>(x)));
    w = -1.0L + p - p * p / 3.0L;
  } else if (x < 2.0) {
    const long double lx = x;
    w = lx * (1.0L - lx + 1.5L * lx * lx) / (1.0L + 0.5L * lx);
    if (w <= -1.0L) w = -0.9L;
  } else {
    const long double lx = std::log(static_cast<long double>(x));
    w = lx - std::log(lx);
  }

  const long double target = x;
  for (int it = 0; it < 50; ++it) {
    const long double ew = std::exp(w);
    const long double f = w * ew - target;
    const long double denom = ew * (w + 1.0L) - (w + 2.0L) * f / (2.0L * w + 2.0L);
    const long double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-17L * (1.0L + std::abs(w))) break;
  }
  const long double resid = std::abs(w * std::exp(w) - target);
  if (resid > 1e-13L * std::max<long double>(std::abs(target), 1e-300L))
    throw NonConvergence("lambert_w0: Halley iteration stalled at x = " +
                         std::to_string(x));
  return static_cast<double>(w);
}

double zeta(double s) {
  if (!(s >= 2.0)) throw DomainError("zeta: supported for s >= 2 only");
  constexpr int N = 64;
  Kahan<long double> sum;
  for (int k = 1; k < N; ++k)
    sum.add(std::exp(-static_cast<long double>(s) * std::log(static_cast<long double>(k))));
  // Euler-Maclaurin tail from N: integral + half-term + B_2, B_4 corrections.
  const long double Nl = N;
  const long double ls = s;
  const long double NmS = std::exp(-ls * std::log(Nl));  // N^{-s}
  long double tail = Nl * NmS / (ls - 1.0L) + 0.5L * NmS +
                     ls * NmS / (12.0L * Nl) -
                     ls * (ls + 1.0L) * (ls + 2.0L) * NmS / (720.0L * Nl * Nl * Nl);
  sum.add(tail);
  return static_cast<double>(sum.value());
}

}  // namespace alphasun
