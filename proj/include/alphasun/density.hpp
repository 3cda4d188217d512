#pragma once

#include <complex>
#include <vector>

#include "alphasun/params.hpp"

namespace alphasun {

// Ratio of Gamma products Gamma(a_1)Gamma(a_2).../Gamma(b_1)Gamma(b_2)...
// evaluated in log space. Numerator arguments within 1e-12 of a
// nonpositive integer are poles of the whole expression and throw;
// denominator arguments there zero out the ratio (the reciprocal Gamma
// is entire), which is the continuous limit.
struct GammaRatioSpec {
  std::vector<double> numerator_args;
  std::vector<double> denominator_args;

  double evaluate() const;
};

// The constant factor in the small-x form of the density, exactly and at
// the first two product-truncation orders. tail_correction is the
// extrapolated remainder added onto the truncated log-product.
struct ConstantReport {
  double exact_c = 0.0;
  double first_order_c = 0.0;
  double second_order_c = 0.0;
  long truncation_K = 0;
  double tail_correction = 0.0;
};

// A sampled density approximation; x strictly increasing.
enum class DensityOrder { FirstOrder, SecondOrder, SmallXAsymptotic, MellinBarnesOracle };
struct DensityCurve {
  DensityOrder order;
  std::vector<std::pair<double, double>> samples;  // (x, h)
};

// F_j as the partial-fraction series sum_l alpha^l (gamma)_l/l! j/(j+l/gamma),
// truncated once the geometric tail bound drops below rel_tol. Real j > 0;
// the complex overload is the same series at complex j (used on the
// inversion contour) and requires Re j > 0 so no denominator vanishes.
double big_f(const Params& p, double j, const Precision& prec = {});
std::complex<double> big_f(const Params& p, std::complex<double> j,
                           const Precision& prec = {});

// F_1..F_{k_max} in one pass over shared series terms.
std::vector<double> big_f_table(const Params& p, int k_max,
                                const Precision& prec = {});

// G_k = 1/(F_1 ... F_k), log-space accumulation.
double g_k(const Params& p, int k, const Precision& prec = {});

// Interpolation of the G-values off the integers:
// (1-alpha)^{-gamma t} prod_{j<=J} F_{j-t}/F_j for t < 1, with the
// remainder past J modelled as c/J (the log-factors decay like j^{-2})
// and c fitted from the last decade of factors. Halving J must move the
// result by less than 1e-4 relatively, else NonConvergence.
double g_interpolated(const Params& p, double t, long truncation_J,
                      const Precision& prec = {});
std::complex<double> g_interpolated(const Params& p, std::complex<double> t,
                                    long truncation_J,
                                    const Precision& prec = {});

// Mellin transform H(s) = Gamma((1+gamma-s)/gamma) * G((s-1)/gamma) of the
// density, s < 1+gamma. H(1) = 1 is the normalization.
double mellin_transform(const Params& p, double s, long truncation_J,
                        const Precision& prec = {});

// |H(s) - gamma/(1+gamma-s) 2F1(gamma,1+gamma-s;2+gamma-s;alpha) H(s-gamma)|
// relative to |H(s)|; the transform must satisfy this identity.
double mellin_functional_residual(const Params& p, double s, long truncation_J,
                                  const Precision& prec = {});

// Small-x constant by Simon's product over K factors with Richardson
// tail correction, alongside the two truncation-order constants.
// The k-th factor's hypergeometric is evaluated through the Kummer map
// 2F1(1,gamma;1+k gamma; alpha/(alpha-1)) = (1-alpha)^gamma F_k, which
// keeps the series argument inside (0,1) for every alpha.
ConstantReport simon_constant(const Params& p, long K,
                              const Precision& prec = {});

// The two truncation-order constants on their own.
double first_order_constant(const Params& p);
double second_order_constant(const Params& p);

// Both sides of the degree-m monomial product identity
// prod_n n^m/(n^m - z^m) = prod_j Gamma(1 - w^j z), w = e^{2 pi i/m},
// plus the zeta-series form exp(sum_k zeta(mk) z^{mk}/k) valid for |z|<1.
// lhs is the N-term partial product (converges like 1/N).
struct GammaProductIdentity {
  std::complex<double> lhs;
  std::complex<double> rhs;
  std::complex<double> wan_rhs;
};
GammaProductIdentity gamma_product_identity(int m, std::complex<double> z,
                                            long N);

// Closed form of prod_j [(1+f_1 j^{-1})...(1+f_m j^{-m})] /
// [(1+f_1 (j-t)^{-1})...(1+f_m (j-t)^{-m})] as a Gamma-function product
// over root-of-unity shifts, m in 1..6, f-values at the given params.
// The root set is closed under conjugation, so the result is real; an
// imaginary residue above 1e-10 relative aborts.
double truncated_ppe_gamma_product(const Params& p, int m, double t,
                                   const Precision& prec = {});

// First-order density approximation
// c1 x^{-1-gamma/(1-alpha)} exp(-(1-alpha)^{-gamma} x^{-gamma}).
double density_first_order(const Params& p, double x);

// Second-order approximation: three 2F2 terms sharing the argument
// -(1-alpha)^{-gamma} x^{-gamma}. Generic parameters only; the three
// pole ladders must be pairwise separated by more than 1e-6 (mod 1).
double density_second_order(const Params& p, double x);

// Small-x limit of the second-order form: first-order shape with the
// constant divided by Gamma(1+beta)Gamma(1-beta), beta = sqrt(alpha/gamma)/(1-alpha).
double density_smallx_second(const Params& p, double x);

// Mellin inversion of H along Re t = c, trapezoidal in Im t with the
// window set by the Gamma-factor decay. Moderate band 0.2 <= (1-alpha)x <= 5
// only. At alpha = 0 every product factor is exactly 1 and the same
// quadrature reproduces the classic limit shape.
double density_mellin_barnes(const Params& p, double x, double c = 0.5,
                             long truncation_J = 1000, long quad_nodes = 0,
                             const Precision& prec = {});

// Sampled curve over an x grid; past-band MB points are skipped rather
// than extrapolated.
DensityCurve density_curve(const Params& p, DensityOrder order,
                           const std::vector<double>& xs,
                           const Precision& prec = {});

}  // namespace alphasun
