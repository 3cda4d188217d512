#pragma once

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "alphasun/params.hpp"

namespace alphasun {

using bigint = boost::multiprecision::cpp_int;

// Gamma function on the complex plane, Lanczos form with reflection for
// Re z < 1/2. Core runs in long double so the pow/exp amplification at
// large real argument stays below 1e-15 relative. Throws PoleError within
// 1e-12 of a nonpositive integer.
std::complex<double> gamma_fn(std::complex<double> z);
double gamma_fn(double x);

// ln Gamma for x > 0 only.
double log_gamma(double x);

// 1/Gamma(x) for real x; exactly 0 within 1e-12 of a nonpositive integer.
// This is the right object wherever a gamma sits in a denominator and a
// pole there means the term vanishes rather than the formula failing.
double rgamma(double x);

// Pochhammer (x)_k = x(x+1)...(x+k-1), k >= 0. (x)_0 = 1.
double pochhammer(double x, int k);

// ln (x)_k for x > 0.
double log_pochhammer(double x, int k);

// Stirling numbers of the second kind, exact. Throws DomainError outside
// 0 <= i <= n and ComplexityError for n past the supported table size.
bigint stirling2(int n, int i);

// Precompute the memo table up to n_max once; later calls are lock-free
// reads. Optional, stirling2 grows the table on demand.
void stirling2_prepare(int n_max);

// Largest n stirling2 will accept.
int stirling2_max_order();

// Gauss hypergeometric 2F1(a,b;c;z) by direct series, |z| < 1. Stops when
// three consecutive terms fall below rel_tol relative to the partial sum.
// PoleError when c is within 1e-12 of a nonpositive integer, NonConvergence
// at max_terms.
double gauss_2f1(double a, double b, double c, double z,
                 const Precision& prec = {});

// Generalized 2F2(a1,a2;b1,b2;z) by direct series, any real z (entire).
// Alternating-series cancellation is the caller's problem; the inner sum is
// compensated and run in long double.
double hyp_2f2(double a1, double a2, double b1, double b2, double z,
               const Precision& prec = {});

// Polylogarithm Li_s(z) = sum_{k>=1} z^k / k^s for 0 < z < 1 and any real
// order s, including large negative s where the summand peaks near
// k* = -s/ln(1/z); the sum is then carried out in log space around the
// peak so intermediate terms cannot overflow.
double polylog(double s, double z, const Precision& prec = {});

// Principal Lambert branch W0(x), x >= -1/e. Halley iteration, residual
// |W e^W - x| <= 1e-13 relative.
double lambert_w0(double x);

// Riemann zeta for real s >= 2. Direct series with Euler-Maclaurin tail.
double zeta(double s);

}  // namespace alphasun
