#pragma once

#include <cmath>
#include <vector>

#include "alphasun/kahan.hpp"
#include "alphasun/params.hpp"

namespace alphasun {

// Which engine produced a table. Carried along so diagnostics can label
// disagreements by route.
enum class Method {
  StirlingSum,
  Recurrence,
  AlphaSeries,
  ToeplitzSolve,
  Convolution,
  PPERecursion,
  DivisorFormula,
  ClosedPolynomial,
};

// One coefficient family over a contiguous index range; the t family
// starts at n = 0 (t_0 = 1), the a/d/f families at n = 1. Stored entries
// are coeff(n) * scale^n; every relation between the families is
// homogeneous of degree n, so tables with equal scale compose exactly and
// ratio diagnostics are scale-free. scale != 1 is how orders past the
// double overflow point (|t_n| ~ n!) stay representable.
struct CoeffTable {
  Params params;
  Method method;
  int first_index = 0;
  double scale = 1.0;
  std::vector<double> values;

  int max_index() const {
    return first_index + static_cast<int>(values.size()) - 1;
  }
  bool contains(int n) const { return n >= first_index && n <= max_index(); }

  // Scaled entry coeff(n) * scale^n.
  double scaled(int n) const;

  // Raw coefficient; overflows to +-inf when scale was chosen to avoid
  // exactly that, so callers wanting raw values should build with scale 1.
  double at(int n) const { return scaled(n) * std::exp(-n * std::log(scale)); }
};

// Power series 1 + sum_{n>=1} a_n x^n with the leading 1 implicit.
struct SeriesCoeffs {
  Params params;
  double scale = 1.0;
  std::vector<double> coeffs;  // a_1..a_N, scaled like CoeffTable

  int order() const { return static_cast<int>(coeffs.size()); }
};

// a-family table (first_index 1) viewed as a series; inverse of the view
// taken by a_from_t's result.
SeriesCoeffs as_series(const CoeffTable& a);

namespace kernels {

// Raw-vector engines, index 0 holds the order-0 entry (t_0 = 1, a_0 = 1,
// d_0 = 0, f_0 = 0). Templated on the floating type; the shipped double
// API instantiates double, tests and high-order diagnostics instantiate
// long double. Inputs are scaled tables; every relation here preserves
// the grading, so outputs carry the same scale.

// a solves sum_{k=0}^{n} t_k a_{n-k} = 0 for n >= 1, a_0 = 1.
template <class Real>
std::vector<Real> a_from_t(const std::vector<Real>& t) {
  const int n_max = static_cast<int>(t.size()) - 1;
  std::vector<Real> a(t.size());
  a[0] = Real(1);
  for (int n = 1; n <= n_max; ++n) {
    Kahan<Real> s;
    for (int k = 1; k <= n; ++k) s.add(t[k] * a[n - k]);
    a[n] = -s.value();
  }
  return a;
}

// Same triangular system read the other way; the map is an involution.
template <class Real>
std::vector<Real> t_from_a(const std::vector<Real>& a) {
  return a_from_t(a);
}

// Logarithmic-derivative coefficients: d_m = -m t_m - sum_{k<m} d_k t_{m-k}.
template <class Real>
std::vector<Real> d_from_t(const std::vector<Real>& t) {
  const int m_max = static_cast<int>(t.size()) - 1;
  std::vector<Real> d(t.size());
  d[0] = Real(0);
  for (int m = 1; m <= m_max; ++m) {
    Kahan<Real> s;
    s.add(Real(m) * t[m]);
    for (int k = 1; k < m; ++k) s.add(d[k] * t[m - k]);
    d[m] = -s.value();
  }
  return d;
}

namespace detail {

// P(r,p) = sum over partitions of r into distinct parts <= p of the
// product of f over the parts, empty partition included. Columns fill
// incrementally as new f_p arrive, so the whole table is O(n^2).
template <class Real>
class StrictPartitionTable {
 public:
  explicit StrictPartitionTable(int r_max) : r_max_(r_max) {
    // column p = 0: only the empty partition
    cols_.push_back(std::vector<Real>(r_max_ + 1));
    cols_[0][0] = Real(1);
  }

  // Appends column p = current count, requires f_p for p = cols_.size().
  void push_part(Real f_p) {
    const int p = static_cast<int>(cols_.size());
    const auto& prev = cols_.back();
    std::vector<Real> col(prev);
    for (int r = p; r <= r_max_; ++r) col[r] += f_p * prev[r - p];
    cols_.push_back(std::move(col));
  }

  // P(r, p); p past the known columns clamps to the last (parts larger
  // than r never contribute).
  Real at(int r, int p) const {
    const int pc = std::min<int>(p, static_cast<int>(cols_.size()) - 1);
    return cols_[pc][r];
  }

 private:
  int r_max_;
  std::vector<std::vector<Real>> cols_;
};

}  // namespace detail

// Product-expansion coefficients: f_{m+1} is fixed by requiring the
// expansion of prod (1 + f_k x^k) to cancel t_{m+1} given f_1..f_m,
//   f_{m+1} = -t_{m+1} - sum_{n=0}^{m} t_n P(m+1-n, m)
// with P the strict-partition sums above (the n = m+1 term would be
// t_0 f_{m+1} itself).
template <class Real>
std::vector<Real> f_ppe(const std::vector<Real>& t) {
  const int n_max = static_cast<int>(t.size()) - 1;
  std::vector<Real> f(t.size());
  if (n_max < 1) return f;
  detail::StrictPartitionTable<Real> P(n_max);
  f[1] = -t[1];
  P.push_part(f[1]);
  for (int m = 1; m < n_max; ++m) {
    Kahan<Real> s;
    s.add(t[m + 1]);
    for (int n = 0; n <= m; ++n) s.add(t[n] * P.at(m + 1 - n, m));
    f[m + 1] = -s.value();
    P.push_part(f[m + 1]);
  }
  return f;
}

// Series coefficients of the finished product: a_n = P(n, n).
template <class Real>
std::vector<Real> a_from_f(const std::vector<Real>& f) {
  const int n_max = static_cast<int>(f.size()) - 1;
  detail::StrictPartitionTable<Real> P(n_max);
  for (int p = 1; p <= n_max; ++p) P.push_part(f[p]);
  std::vector<Real> a(f.size());
  a[0] = Real(1);
  for (int n = 1; n <= n_max; ++n) a[n] = P.at(n, n);
  return a;
}

// Arithmetic inversion of d: f_n = d_n/n + sum_{q | n, q > 1} (-f_{n/q})^q / q.
template <class Real>
std::vector<Real> f_from_divisors(const std::vector<Real>& d) {
  const int n_max = static_cast<int>(d.size()) - 1;
  std::vector<Real> f(d.size());
  for (int n = 1; n <= n_max; ++n) {
    Kahan<Real> s;
    s.add(d[n] / Real(n));
    for (int q = 2; q <= n; ++q) {
      if (n % q != 0) continue;
      Real base = -f[n / q];
      Real pw = Real(1);
      for (int i = 0; i < q; ++i) pw *= base;
      s.add(pw / Real(q));
    }
    f[n] = s.value();
  }
  return f;
}

}  // namespace kernels

namespace detail {
// Scaled t_n * scale^n at full extended precision; the double engines and
// the high-order diagnostics both sit on top of this.
long double t_stirling_scaled(const Params& p, int n, long double scale);
}  // namespace detail

// t engines. Single-value forms return the raw coefficient; table forms
// return n = 0..n_max with t_0 = 1 (scaled).

// Exact route: Stirling-number sum, long double accumulation of the
// single-signed inner sum. Order capped by the exact table size.
double t_stirling(const Params& p, int n);
CoeffTable t_stirling_table(const Params& p, int n_max, double scale = 1.0);

// Two-term recurrence in the order/shift triangle, anchored at the order-0
// value for every shifted gamma, Stirling sums at the leaves. Memoized over
// (shift, order), O(n_max^2).
CoeffTable t_recurrence(const Params& p, int n_max, double scale = 1.0);

// Power-series route: single-signed series over the alpha powers, summed
// in log space around its peak so no intermediate overflows.
double t_alpha_series(const Params& p, int n, const Precision& prec = {});
CoeffTable t_alpha_series_table(const Params& p, int n_max,
                                const Precision& prec = {},
                                double scale = 1.0);

// ln|t_n| and the sign, usable far past double overflow.
double t_log_abs(const Params& p, int n);
inline int t_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

// Conversions between the families (results share params and scale).
CoeffTable a_from_t(const CoeffTable& t);
CoeffTable t_from_a(const SeriesCoeffs& a);
CoeffTable d_from_t(const CoeffTable& t);
CoeffTable f_from_divisors(const CoeffTable& d, int n_max);
CoeffTable a_from_f(const CoeffTable& f);

// Product-expansion coefficients f_1..f_{m_max} by the order-peeling
// recursion, exact t route underneath. Refused past order 64; the divisor
// route is the designated large-order engine.
CoeffTable f_ppe_recursive(const Params& p, int m_max,
                           const Precision& prec = {});
CoeffTable f_ppe_recursive(const CoeffTable& t);

// Direct partition-sum evaluation of a single a_n from a t table. Cost
// grows with the partition count; refused for n > 20.
double a_multinomial(const CoeffTable& t, int n);

// Max residual of m a_m = d_m + sum_{k<m} d_k a_{m-k} over the common
// range, each order's residual scaled by its largest participating term
// (of size m|t_m|, so the figure reads as a relative one).
double d_a_check(const SeriesCoeffs& a, const CoeffTable& d);

// Max residual of sum_{n=0}^{M} t_n a_{M-n} = 0 where a is rebuilt from
// the product coefficients f, likewise relative to the largest term.
double unified_relation_check(const CoeffTable& t, const CoeffTable& f);

// Exponential generating function spot check:
// |sum_{n<=n_max} t_n z0^n/n! - (1-alpha)^gamma (1 - alpha e^{-z0/gamma})^{-gamma}|
// reported as absolute deviation. Requires |z0| <= 0.1 gamma ln(1/alpha)
// so the truncation tail sits below the comparison tolerance.
double t_egf_check(const Params& p, int n_max, double z0);

// Residual of the moment identity
//   sum_{k>=0} alpha^k (gamma)_k k^m / k! = (1-alpha)^{-gamma} *
//   sum_l S(m,l) (gamma)_l (alpha/(1-alpha))^l
// relative to the right side. m <= 12, 0 < alpha < 1.
double power_sum_identity_check(const Params& p, int m,
                                const Precision& prec = {});

// Sign pattern (-1)^n t_n > 0 over the whole table (alpha > 0).
bool sign_alternates(const CoeffTable& t);

// Closed polynomials in (alpha, gamma) for the first orders, n in 1..6
// (t also accepts n = 0).
double t_closed(const Params& p, int n);
double a_closed(const Params& p, int n);
double f_closed(const Params& p, int n);

// First six f_n as polynomials in the t_n, evaluated on the closed t
// values; the generic-order engines must reproduce these.
double f_from_t_closed(const Params& p, int n);
double f_from_t_closed(const double* t, int n);  // t is 1-based, t[1..n]

}  // namespace alphasun
